#pragma once

#include "cycles.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "features.hpp"
#include "gold_tree.hpp"
#include "labels.hpp"
#include "loss_audit.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "random.hpp"
#include "synthetic.hpp"
#include "transition_system.hpp"
#include "treebank.hpp"

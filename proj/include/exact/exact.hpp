#pragma once

#include "exact/errors.hpp"
#include "exact/joints.hpp"
#include "exact/program.hpp"
#include "exact/random.hpp"
#include "exact/syntax/lexer.hpp"
#include "exact/syntax/parser.hpp"
#include "exact/syntax/printer.hpp"
#include "exact/grammar/prefix_automaton.hpp"
#include "exact/grammar/sampler.hpp"
#include "exact/runtime/state.hpp"
#include "exact/runtime/provider.hpp"
#include "exact/runtime/timeline.hpp"
#include "exact/runtime/compiler.hpp"
#include "exact/runtime/rollout.hpp"
#include "exact/model/disjunction.hpp"
#include "exact/model/selection.hpp"
#include "exact/model/merge.hpp"
#include "exact/model/action_model.hpp"
#include "exact/eval/assignment.hpp"
#include "exact/eval/edit_distance.hpp"
#include "exact/eval/assessment.hpp"
#include "exact/io/formats.hpp"

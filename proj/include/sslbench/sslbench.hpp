/*
 * Copyright 2026 The sslbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "sslbench/common.hpp"
#include "sslbench/core/dataset.hpp"
#include "sslbench/core/discretize.hpp"
#include "sslbench/core/table_io.hpp"
#include "sslbench/eval/auc.hpp"
#include "sslbench/eval/bias.hpp"
#include "sslbench/eval/stats.hpp"
#include "sslbench/eval/wtl.hpp"
#include "sslbench/learners/biprobit.hpp"
#include "sslbench/learners/classifier.hpp"
#include "sslbench/learners/discretizing.hpp"
#include "sslbench/learners/naive_bayes.hpp"
#include "sslbench/learners/nearest_neighbor.hpp"
#include "sslbench/learners/normal.hpp"
#include "sslbench/learners/probit.hpp"
#include "sslbench/learners/tree.hpp"
#include "sslbench/ssl/assemble.hpp"
#include "sslbench/ssl/cc_mixture.hpp"
#include "sslbench/ssl/cotrain.hpp"
#include "sslbench/ssl/reweight.hpp"
#include "sslbench/ssl/sample_select.hpp"
#include "sslbench/synth/generate.hpp"
#include "sslbench/synth/missingness.hpp"
#include "sslbench/bench/config.hpp"
#include "sslbench/bench/plan.hpp"
#include "sslbench/bench/report.hpp"
#include "sslbench/bench/results.hpp"
#include "sslbench/bench/runner.hpp"
#include "sslbench/bench/techniques.hpp"

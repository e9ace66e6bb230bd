/*
 * Copyright 2026 The ConStR Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CONSTR_CONSTR_HPP
#define CONSTR_CONSTR_HPP

// Everything in one include.

#include "bisim.hpp"
#include "coalition.hpp"
#include "corpus.hpp"
#include "distinguish.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "formula_io.hpp"
#include "game_model.hpp"
#include "generators.hpp"
#include "model_io.hpp"
#include "outcome_index.hpp"
#include "schemes.hpp"
#include "semantics.hpp"
#include "state_set.hpp"

#endif // CONSTR_CONSTR_HPP

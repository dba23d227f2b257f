/*
 * Copyright 2026 The dioph Authors.
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

#ifndef DIOPH_DIOPH_HPP_
#define DIOPH_DIOPH_HPP_

#include "dioph/corpus.hpp"
#include "dioph/formula.hpp"
#include "dioph/gadget_config.hpp"
#include "dioph/gadgets.hpp"
#include "dioph/lexer.hpp"
#include "dioph/numeric.hpp"
#include "dioph/oracle.hpp"
#include "dioph/passes.hpp"
#include "dioph/poly.hpp"
#include "dioph/ring.hpp"
#include "dioph/serialize.hpp"
#include "dioph/union.hpp"

#endif  // DIOPH_DIOPH_HPP_

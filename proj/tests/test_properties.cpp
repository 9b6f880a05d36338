/*
 * Copyright 2026 The spe-lab Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "properties.hpp"

using namespace spelab::testing;

namespace {

void require_clean(const PropertyResult& r)
{
    INFO(r.first);
    CHECK(r.cases > 0);
    CHECK(r.violations == 0);
}

} // namespace

TEST_CASE("lasso canonicalization and cost") { require_clean(lasso_canonicalization(600)); }

TEST_CASE("shift law") { require_clean(shift_law(600)); }

TEST_CASE("suffix closure of fixpoint witnesses") { require_clean(witness_suffix_closure(150)); }

TEST_CASE("cycle-constant bound vectors") { require_clean(cycle_constant_bounds(150)); }

TEST_CASE("table monotonicity") { require_clean(table_monotonicity(150)); }

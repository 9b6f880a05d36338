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

#pragma once

#include <stdexcept>
#include <string>

namespace spelab {

/// Malformed input: bad JSON, unknown ids, dead ends, mode mismatches.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A lasso or history that does not follow the arena's edges.
class StructureError : public InputError
{
public:
    using InputError::InputError;
};

/// An engine result contradicting a known theorem (e.g. an empty reachable
/// stratum in a reachability game).
class ConsistencyError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace spelab

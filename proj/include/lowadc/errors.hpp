// SPDX-License-Identifier: Apache-2.0
//
// lowadc - uplink MIMO detection behind low-resolution ADCs
// Copyright (C) 2026 The lowadc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace lowadc
{

// Raised when an enumeration or counter would exceed its configured limit
// (candidate tables, complexity counters).
class capacity_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised on numerically unusable input, e.g. an ill-conditioned Gram matrix.
class numeric_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace lowadc

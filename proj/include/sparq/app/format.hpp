// Copyright 2026 The SPARQ Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

namespace sparq::app {

/// Six significant digits, locale independent ("0.930123", "100", "1e-07").
std::string format_number(double value);

/// Fixed notation with six decimals ("0.998765").
std::string format_fixed6(double value);

/// `format_number` parsed back, for embedding in JSON with the same rounding.
double rounded6(double value);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace sparq::app

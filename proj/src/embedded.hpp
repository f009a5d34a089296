/*
 * Copyright 2026 The tailcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <string_view>

namespace tailcheck::detail {

// Data files compiled into the library at configure time, keyed by their path
// relative to the source tree ("tables/en-de/currencies.tsv",
// "data/stopwords/en.txt").
std::optional<std::string_view> embedded_file(std::string_view name) noexcept;

} // namespace tailcheck::detail

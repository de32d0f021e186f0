// Copyright 2026 The Luck Generator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LUCK_DRIVER_REPORT_H_
#define LUCK_DRIVER_REPORT_H_

#include <cstddef>
#include <string>

#include "luck/driver/driver.h"
#include "luck/surface/frontend.h"

namespace luck {

// One JSON object on one line; the schema is described in the README.
std::string report_json(const surface::CompiledQuery& q, const GenReport& r,
                        size_t index);

}  // namespace luck

#endif  // LUCK_DRIVER_REPORT_H_

/*
 * Copyright 2025 the prnn authors
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

#ifndef PRNN_PARAMS_IO_HPP_
#define PRNN_PARAMS_IO_HPP_

#include <string>
#include <vector>

#include "prnn/device.hpp"

namespace prnn {

// Reads a device parameter file: a JSON object whose keys name DeviceParams
// fields and whose values are unit-suffixed strings ("20ns", "4uW/nm").
// Missing keys keep their defaults; unknown keys are an error that names
// the file line. Fields with the unit baked into the name (ted_discount,
// pd_sensitivity_dbm, loss_*) may be plain numbers.
DeviceParams load_device_params(const std::string& path);

// Same grammar, parsed from an in-memory string. `origin` labels errors.
DeviceParams parse_device_params(const std::string& text, const std::string& origin);

// Serializes with canonical unit suffixes; load(save(p)) == p.
std::string device_params_to_json(const DeviceParams& params);
void save_device_params(const DeviceParams& params, const std::string& path);

// Coupling characterization table: CSV with header
// w_mr_nm,radius_um,kappa,n_g and one measured geometry per row.
std::vector<KappaTableRow> load_kappa_table(const std::string& path);

}  // namespace prnn

#endif  // PRNN_PARAMS_IO_HPP_

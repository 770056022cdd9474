// Copyright 2026 The witness authors
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

#include "generality.hpp"

#include <algorithm>
#include <filesystem>

#include "reference.hpp"

namespace witness::testing {

GeneralityCheck check_generality(const std::string& name, const SourceFile& src,
                                 const SearchParams& params) {
  GeneralityCheck c;
  c.name = name;
  ExprPtr entry = link_entry(parse_program(src), "");
  SearchReport r = gen_witness(params, entry);
  if (r.classification != Classification::WitnessFound) {
    c.failures.push_back(std::string("classified ") + classification_name(r.classification));
    return c;
  }
  c.witness_found = true;
  Saturated sat = saturate(entry, params);
  for (const Witness& w : r.witnesses) {
    ++c.witnesses;
    ExprPtr call = concretize(w.call, w.subst);
    RefResult ref = reference_eval(call);
    if (ref.cls == RefClass::TypeStuck) {
      ++c.replayed_stuck;
    } else {
      c.failures.push_back("replay of " + pretty(call) + " gave " + ref_class_name(ref.cls));
    }
  }

  const Witness& first = r.witnesses.front();
  for (const TypePtr& sample : generality_samples()) {
    TypeSubst pre;
    for (std::size_t i = 0; i < sat.holes.size(); ++i) {
      const TypePtr& t = first.partial_input_types[i];
      if (!is_concrete(t)) pre[sat.holes[i]->type->hole] = fill_holes(t, sample);
    }
    if (pre.empty()) break;
    ++c.instantiations;
    SearchReport again = gen_witness(params, entry, pre);
    if (again.classification == Classification::WitnessFound) {
      ++c.instantiations_found;
    } else {
      c.failures.push_back("instantiating at " + type_to_string(sample) + " gave " +
                           classification_name(again.classification));
    }
  }
  return c;
}

std::vector<std::string> list_programs(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(std::string(WITNESS_TEST_DIR) + "/" + dir))
    if (e.path().extension() == ".ml") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace witness::testing

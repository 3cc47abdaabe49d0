#include "propsp/json.hpp"

#include <cmath>

namespace propsp {

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json json_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_values(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

Json to_json(const CompatReport& r) {
  return Json{{"margin_c", json_number(r.margin_c)},
              {"q_norm", json_number(r.q_norm)},
              {"residual_cross", json_number(r.residual_cross)},
              {"is_compatible", r.is_compatible}};
}

Json to_json(const SpectrumReport& r) {
  Json gaps = Json::array();
  for (double g : r.gaps) gaps.push_back(json_number(g));
  return Json{{"algebra", to_string(r.algebra)}, {"values", json_values(r.values)}, {"gaps", std::move(gaps)}};
}

Json to_json(const RieszResult& r) {
  return Json{{"q", json_matrix(r.q.p.matrix())},
              {"idempotency_res", json_number(r.idempotency_res)},
              {"plus_res", json_number(r.plus_res)},
              {"range_dim", r.range_dim}};
}

Json to_json(const VVPlusReport& r) {
  return Json{{"spec_vvplus", json_values(r.spec_vvplus)},
              {"min_symmetric", json_number(r.min_symmetric)},
              {"max_imag", json_number(r.max_imag)},
              {"min_real", json_number(r.min_real)}};
}

Json to_json(const ZCriterion& r) {
  return Json{{"pair_margin", json_number(r.pair_margin)}, {"op_margin", json_number(r.op_margin)}};
}

Json to_json(const SylvesterResult& r) {
  Json j{{"solvable", r.solvable},
         {"margin", json_number(r.margin)},
         {"spectral_distance", json_number(r.spectral_distance)},
         {"residual", json_number(r.residual)}};
  j["x"] = r.x ? json_matrix(*r.x) : Json(nullptr);
  return j;
}

Json to_json(const CqReport& r) {
  return Json{{"k", r.k},
              {"direct_margin", json_number(r.direct_margin)},
              {"companion_margin", json_number(r.companion_margin)},
              {"q_norm", json_number(r.q_norm)},
              {"pair_margin", json_number(r.pair_margin)},
              {"op_margin", json_number(r.op_margin)},
              {"complement_residual_direct", json_number(r.complement_residual_direct)},
              {"complement_residual_literature", json_number(r.complement_residual_literature)},
              {"compatible_direct", r.compatible_direct}};
}

Json to_json(const TwoCompanionsReport& r) {
  return Json{{"violations", r.violations},
              {"t_fixed_angle", json_number(r.t_fixed_angle)},
              {"gs_expected_angle", json_number(r.gs_expected_angle)},
              {"cond_g", json_number(r.cond_g)},
              {"cond_g_plus", json_number(r.cond_g_plus)},
              {"g_plus_residual", json_number(r.g_plus_residual)},
              {"gs_companion_of_t", r.gs_companion_of_t},
              {"source_pair_margin", json_number(r.source_pair_margin)},
              {"transported_pair_margin", json_number(r.transported_pair_margin)},
              {"transported_direct_margin", json_number(r.transported_direct_margin)},
              {"ok", r.ok}};
}

Json to_json(const AdzNormReport& r) {
  return Json{{"frob_norm", json_number(r.frob_norm)},
              {"trace_norm_estimate", json_number(r.trace_norm_estimate)},
              {"znorm_sq", json_number(r.znorm_sq)},
              {"ok", r.ok}};
}

}  // namespace propsp

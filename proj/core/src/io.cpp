#include "oqec/io.hpp"

#include <fstream>
#include <sstream>

#include "oqec/error.hpp"

namespace oqec::io {

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + "/" + key, "missing field");
  return *it;
}

std::size_t require_dim(const json& j, const std::string& key, const std::string& path,
                        std::size_t min) {
  const json& v = require(j, key, path);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
    throw InputError(path + "/" + key,
                     "expected an integer >= " + std::to_string(min));
  }
  return v.get<std::size_t>();
}

}  // namespace

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw InputError(path, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw InputError(path + "/0", "expected a nonempty row");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InputError(rp, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& z = j[r][c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw InputError(rp + "/" + std::to_string(c), "expected [re, im]");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json to_json(const Decomposition& dec) {
  json j = {{"dim_a", dec.dim_a()}, {"dim_b", dec.dim_b()}, {"dim_c", dec.dim_c()}};
  if (dec.frame()) j["frame"] = to_json(*dec.frame());
  return j;
}

Decomposition decomposition_from_json(const json& j) {
  const std::size_t da = require_dim(j, "dim_a", "", 1);
  const std::size_t db = require_dim(j, "dim_b", "", 1);
  const std::size_t dc = require_dim(j, "dim_c", "", 0);
  std::optional<Matrix> frame;
  if (j.contains("frame") && !j["frame"].is_null()) {
    frame = matrix_from_json(j["frame"], "/frame");
  }
  try {
    return Decomposition(da, db, dc, std::move(frame));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError("/frame", e.what());
  }
}

json to_json(const Channel& ch) {
  json kraus = json::array();
  for (const auto& e : ch.kraus) kraus.push_back(to_json(e));
  json j = {{"dim_in", ch.dim_in}, {"dim_out", ch.dim_out}, {"kraus", std::move(kraus)}};
  if (ch.trace_decreasing) j["trace_decreasing"] = true;
  return j;
}

Channel channel_from_json(const json& j) {
  const std::size_t din = require_dim(j, "dim_in", "", 1);
  const std::size_t dout = require_dim(j, "dim_out", "", 1);
  const json& kraus = require(j, "kraus", "");
  if (!kraus.is_array() || kraus.empty()) {
    throw InputError("/kraus", "expected a nonempty array of matrices");
  }
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    const std::string path = "/kraus/" + std::to_string(i);
    Matrix m = matrix_from_json(kraus[i], path);
    if (static_cast<std::size_t>(m.rows()) != dout ||
        static_cast<std::size_t>(m.cols()) != din) {
      throw InputError(path, "expected a " + std::to_string(dout) + "x" +
                                 std::to_string(din) + " matrix");
    }
    ops.push_back(std::move(m));
  }
  bool declared = false;
  if (j.contains("trace_decreasing")) {
    if (!j["trace_decreasing"].is_boolean()) {
      throw InputError("/trace_decreasing", "expected a boolean");
    }
    declared = j["trace_decreasing"].get<bool>();
  }
  return Channel(din, dout, std::move(ops), declared);
}

json to_json(const ConditionReport& rep, bool include_blocks) {
  json j = {{"condition", to_string(rep.condition)},
            {"pass", rep.pass},
            {"residual", rep.residual},
            {"tol", rep.tol}};
  json w = json::object();
  if (const auto* b = std::get_if<ConditionBWitness>(&rep.witness)) {
    w["num_kraus"] = b->num_kraus;
    w["worst_pair"] = {b->worst_pair.first, b->worst_pair.second};
    w["max_pair_residual"] = b->max_pair_residual;
    w["pair_residuals"] = b->pair_residuals;
    if (include_blocks) {
      json blocks = json::array();
      for (const auto& m : b->b_blocks) blocks.push_back(to_json(m));
      w["b_blocks"] = std::move(blocks);
    }
  } else if (const auto* c = std::get_if<ConditionCWitness>(&rep.witness)) {
    w["rho_ra"] = to_json(c->rho_ra);
    if (include_blocks) w["rho_rbe"] = to_json(c->rho_rbe);
  } else if (const auto* d = std::get_if<ConditionDWitness>(&rep.witness)) {
    w["s_a"] = d->s_a;
    w["s_v"] = d->s_v;
    w["s_rbe"] = d->s_rbe;
    w["signed_gap"] = d->signed_gap;
  }
  j["witness"] = std::move(w);
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

json to_json(const VerificationReport& rep) {
  return {{"trials", rep.trials},
          {"skipped", rep.skipped},
          {"max_infidelity", rep.max_infidelity},
          {"b_marginal_drift", rep.b_marginal_drift},
          {"max_leakage", rep.max_leakage},
          {"support_ok", rep.support_ok}};
}

json to_json(const DpiTrace& trace) {
  return {{"values", trace.values},
          {"monotone", trace.monotone},
          {"max_increase", trace.max_increase}};
}

json to_json(const Recovery& rec, const json& extra_metadata) {
  json j = to_json(rec.channel);
  json meta = {{"method", to_string(rec.method)},
               {"condition_b_residual", rec.condition_b_residual},
               {"num_completion", rec.num_completion}};
  if (const auto* s = std::get_if<SchmidtData>(&rec.data)) {
    meta["q"] = s->q;
    meta["num_k"] = s->num_k;
  } else if (const auto* u = std::get_if<UniversalData>(&rec.data)) {
    std::vector<double> spectrum(u->gram_spectrum.data(),
                                 u->gram_spectrum.data() + u->gram_spectrum.size());
    meta["gram_spectrum"] = spectrum;
    meta["num_isometries"] = u->isometries.size();
  }
  meta.update(extra_metadata);
  j["metadata"] = std::move(meta);
  return j;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

}  // namespace oqec::io

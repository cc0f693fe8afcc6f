#pragma once

/**
 * @file run.hpp
 * @brief The `cover-calc` commands as a library: each returns a JSON report
 * and an exit code. The human-readable form is rendered from the report.
 */

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "covercalc/cli/parse.hpp"
#include "covercalc/oracle/search.hpp"

namespace covercalc::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kMismatch = 2, kUsage = 64, kDataError = 65 };

struct Options {
  bool check = false;
  std::optional<std::uint64_t> max_size;
  std::optional<std::string> puncture;
  bool maximal_only = true;
  bool timing = false;
};

struct Outcome {
  Json report;
  int exit_code = kOk;
};

/// Bad command line: unknown command, missing arguments.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline oracle::OracleLimits limits_of(const Options& o) {
  oracle::OracleLimits l;
  if (o.max_size) {
    l.sigma_bound = *o.max_size;
    l.coset_bound = *o.max_size;
    l.all_subgroups_bound = std::max(l.all_subgroups_bound, *o.max_size);
  }
  return l;
}

inline std::string answer_kind(const CoverAnswer& a) {
  switch (a.kind) {
    case CoverAnswer::Kind::NoCover: return "no-cover";
    case CoverAnswer::Kind::Threshold: return "threshold";
    case CoverAnswer::Kind::UpperBoundOnly: return "upper-bound-only";
  }
  return "?";
}

inline Json sigma_payload(const ModuleDescriptor& d) {
  Json j;
  const CoverAnswer a = sigma(d);
  j["answer"] = a.to_string();
  j["answer_kind"] = answer_kind(a);
  const auto n = sigma_integer(d);
  j["sigma_integer"] = n ? Json(*n) : Json("infinity");
  if (!a.note.empty()) j["note"] = a.note;
  if (d.ring.is_field()) {
    j["q"] = d.ring.declared_cardinal().to_string();
    j["nc"] = nullptr;
    return j;
  }
  const ModuleDescriptor red = d.has_divisible_part() ? reduced_divisible_split(d).first : d;
  const auto q = q_value(red);
  j["q"] = q ? Json(q->to_string()) : Json(nullptr);
  j["nc"] = nc_set(red).to_string();
  if (!d.has_divisible_part()) j["trichotomy"] = classify(d).to_string();
  return j;
}

inline Json witness_json(const RingHandle& ring, const CoverWitness& w) {
  Json j;
  if (!w.is_lines()) {
    const auto& c = w.chain();
    j["type"] = "countable-chain";
    j["kind"] = to_string(c.kind);
    if (c.at) j["at"] = c.at->to_string();
    j["description"] = c.description;
    return j;
  }
  const auto& l = w.lines();
  j["type"] = "lines";
  j["ideal"] = l.m.to_string();
  j["residue"] = l.residue.to_string();
  j["summands"] = {l.summand_pair.first.to_string(), l.summand_pair.second.to_string()};
  j["symbolic"] = l.symbolic;
  Json lines = Json::array();
  for (const auto& pt : l.lines) {
    const std::string lam = ring.is_field() ? "r" + std::to_string(pt.lambda) : residue::to_string(ring, l.m, pt.lambda);
    const std::string mu = ring.is_field() ? "r" + std::to_string(pt.mu) : residue::to_string(ring, l.m, pt.mu);
    lines.push_back({{"lambda", lam}, {"mu", mu}, {"submodule", "{x : (" + mu + ")x_i = (" + lam + ")x_j mod (" + l.m.to_string() + ")}"}});
  }
  j["lines"] = std::move(lines);
  return j;
}

inline bool materializable(const ModuleDescriptor& d) {
  return d.is_finite_torsion() && d.ring.is_concrete();
}

inline Json size_json(const std::optional<std::size_t>& s) { return s ? Json(*s) : Json("no-cover"); }

inline Json sigma_oracle(const ModuleDescriptor& d, const Options& o, Outcome& out) {
  Json j;
  if (!materializable(d)) {
    j["skipped"] = "not a finite module over Z, Zi or Fp[t]";
    return j;
  }
  try {
    const auto limits = limits_of(o);
    const auto mm = oracle::materialize(d, limits.sigma_bound);
    const auto r = oracle::min_submodule_cover(mm.module, o.maximal_only, limits);
    const auto formula = sigma_integer(d);
    j["module_order"] = mm.size();
    j["oracle_value"] = size_json(r.size);
    j["match"] = (r.size.has_value() == formula.has_value()) && (!formula || *formula == *r.size);
    if (!j["match"].get<bool>()) out.exit_code = kMismatch;
  } catch (const CoverError& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    j["skipped"] = e.what();
  }
  return j;
}

inline ModuleDescriptor cyclic_target(const ModuleDescriptor& d) {
  if (d.torsion.size() != 1 || d.torsion.front().multiplicity != Cardinal(1) || !d.is_finite_torsion()) {
    throw CoverError(ErrorCode::NotApplicable, "coset-cover takes a single cyclic summand R/(x)");
  }
  return d;
}

inline std::size_t puncture_index(const oracle::MaterializedModule& mm, const Options& o) {
  if (!o.puncture) return 0;
  if (mm.summands.size() != 1) {
    throw CoverError(ErrorCode::NotApplicable, "--puncture is supported for cyclic targets; use 0 otherwise");
  }
  return mm.embed(0, parse_element(mm.ring, *o.puncture));
}

// ---- commands -------------------------------------------------------------

inline void cmd_sigma(const std::string& spec, const Options& o, Outcome& out, bool with_witness) {
  const ModuleDescriptor d = parse_spec(spec);
  out.report["descriptor"] = render(d);
  if (!d.ring.is_field()) out.report["normalized"] = render(normalize(d).to_descriptor());
  out.report.update(sigma_payload(d));
  const CoverAnswer a = sigma(d);
  if (with_witness) {
    if (a.kind == CoverAnswer::Kind::NoCover) {
      out.report["witness"] = nullptr;
    } else {
      const CoverWitness w = build_cover_witness(d);
      out.report["witness"] = witness_json(d.ring, w);
      if (o.check) {
        Json c;
        if (w.is_lines() && !w.lines().symbolic && materializable(d)) {
          try {
            const auto mm = oracle::materialize(d, limits_of(o).sigma_bound);
            c["verified"] = oracle::verify_cover_witness(mm, w);
            if (!c["verified"].get<bool>()) out.exit_code = kMismatch;
          } catch (const CoverError& e) {
            if (e.code() != ErrorCode::TooLarge) throw;
            c["skipped"] = e.what();
          }
        } else {
          c["skipped"] = "witness is not elementwise checkable";
        }
        out.report["witness_check"] = c;
      }
    }
  }
  if (o.check) out.report["oracle"] = sigma_oracle(d, o, out);
}

inline Json phi_payload(const ModuleDescriptor& d) {
  Json j;
  const auto blocks = prime_power_blocks(d);
  Json bl = Json::array();
  for (const auto& [m, n] : blocks) bl.push_back({{"ideal", m.to_string()}, {"exponent", n}, {"phi_prime", phi_prime(d.ring, m, n)}});
  j["blocks"] = bl;
  const ConjectureValue v = phi_conjecture_value(d.ring, blocks);
  j["phi"] = v.value;
  j["conjectural"] = v.conjectural;
  return j;
}

inline Json phi_oracle(const ModuleDescriptor& d, const Options& o, std::uint64_t formula, Outcome* out) {
  Json j;
  if (!materializable(d)) {
    j["skipped"] = "not a finite module over Z, Zi or Fp[t]";
    return j;
  }
  try {
    const auto limits = limits_of(o);
    const auto mm = oracle::materialize(d, limits.coset_bound);
    const std::size_t puncture = puncture_index(mm, o);
    const auto r = oracle::min_coset_cover_punctured(mm.module, puncture, o.maximal_only, limits);
    j["module_order"] = mm.size();
    j["oracle_value"] = size_json(r.size);
    j["match"] = r.size && *r.size == formula;
    if (out && !j["match"].get<bool>()) out->exit_code = kMismatch;
  } catch (const CoverError& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    j["skipped"] = e.what();
  }
  return j;
}

inline void cmd_phi(const std::string& spec, const Options& o, Outcome& out) {
  const ModuleDescriptor d = parse_spec(spec);
  out.report["descriptor"] = render(d);
  out.report.update(phi_payload(d));
  if (o.check) {
    const bool conjectural = out.report["conjectural"].get<bool>();
    out.report["oracle"] = phi_oracle(d, o, out.report["phi"].get<std::uint64_t>(), conjectural ? nullptr : &out);
  }
}

inline void cmd_coset_cover(const std::string& spec, const Options& o, Outcome& out) {
  const ModuleDescriptor d = cyclic_target(parse_spec(spec));
  const RingElement puncture = parse_element(d.ring, o.puncture.value_or("0"));
  const auto w = build_coset_cover(d.ring, d.torsion.front().annihilator, puncture);
  out.report["descriptor"] = w.target();
  out.report["puncture"] = element::to_string(w.puncture);
  out.report["phi"] = phi_cyclic(d.ring, w.ideal);
  Json cs = Json::array();
  for (const auto& c : w.cosets) {
    cs.push_back({{"submodule_generators", {element::to_string(c.generator)}},
                  {"submodule_ideal", c.submodule.to_string()},
                  {"representative", element::to_string(c.representative)}});
  }
  out.report["cosets"] = cs;
  if (o.check) {
    Json c;
    try {
      const auto mm = oracle::materialize(d, limits_of(o).sigma_bound);
      c["verified"] = oracle::verify_cover_witness(mm, w);
      if (!c["verified"].get<bool>()) out.exit_code = kMismatch;
    } catch (const CoverError& e) {
      if (e.code() != ErrorCode::TooLarge) throw;
      c["skipped"] = e.what();
    }
    out.report["witness_check"] = c;
  }
}

inline void cmd_monoid(const std::string& spec, const Options& o, Outcome& out) {
  const MonoidDescriptor d = parse_monoid(spec);
  const MonoidAnswer a = classify_monoid(d);
  out.report["descriptor"] = d.to_string();
  out.report["answer"] = a.to_string();
  if (a.delegate) {
    out.report["delegate"] = render(*a.delegate);
    out.report["sigma"] = sigma_payload(*a.delegate);
  }
  if (a.kind == MonoidAnswer::Kind::TwoSubmonoids) {
    Json parts = Json::array();
    for (const auto& p : a.parts) parts.push_back(p.to_string());
    out.report["parts"] = parts;
    if (o.check) {
      const bool ok = verify_monoid_partition(d, a, 10);
      out.report["partition_check"] = {{"bound", 10}, {"verified", ok}};
      if (!ok) out.exit_code = kMismatch;
    }
  }
}

inline void cmd_oracle(const std::vector<std::string>& args, const Options& o, Outcome& out) {
  if (args.size() != 2 || (args[0] != "sigma" && args[0] != "phi")) throw UsageError("usage: oracle sigma|phi \"<spec>\"");
  const ModuleDescriptor d = parse_spec(args[1]);
  out.report["descriptor"] = render(d);
  out.report["mode"] = args[0];
  if (!materializable(d)) throw CoverError(ErrorCode::NotMaterializable, render(d) + " is not a finite module over Z, Zi or Fp[t]");
  const auto limits = limits_of(o);
  if (args[0] == "sigma") {
    const auto mm = oracle::materialize(d, limits.sigma_bound);
    const auto r = oracle::min_submodule_cover(mm.module, o.maximal_only, limits);
    out.report["module_order"] = mm.size();
    out.report["maximal_only"] = o.maximal_only;
    out.report["oracle_value"] = size_json(r.size);
    out.report["search_nodes"] = r.nodes;
    Json parts = Json::array();
    for (const auto& s : r.witness) parts.push_back({{"order", s.count()}, {"index", mm.size() / s.count()}});
    out.report["witness"] = parts;
  } else {
    const auto mm = oracle::materialize(d, limits.coset_bound);
    const std::size_t puncture = puncture_index(mm, o);
    const auto r = oracle::min_coset_cover_punctured(mm.module, puncture, o.maximal_only, limits);
    out.report["module_order"] = mm.size();
    out.report["maximal_only"] = o.maximal_only;
    out.report["oracle_value"] = size_json(r.size);
    out.report["search_nodes"] = r.nodes;
    Json parts = Json::array();
    for (const auto& s : r.witness) parts.push_back({{"size", s.count()}});
    out.report["witness"] = parts;
  }
}

inline void cmd_verify(const std::string& spec, const Options& o, Outcome& out) {
  const ModuleDescriptor d = parse_spec(spec);
  out.report["descriptor"] = render(d);
  out.report.update(sigma_payload(d));
  out.report["oracle"] = sigma_oracle(d, o, out);
  if (materializable(d) && !d.is_zero_module()) {
    const Json phi = phi_payload(d);
    out.report["phi"] = phi["phi"];
    out.report["conjectural"] = phi["conjectural"];
    const bool conjectural = phi["conjectural"].get<bool>();
    Json po = phi_oracle(d, o, phi["phi"].get<std::uint64_t>(), conjectural ? nullptr : &out);
    if (conjectural && po.contains("match") && !po["match"].get<bool>()) po["counterexample"] = true;
    out.report["phi_oracle"] = po;
  }
  if (out.report["oracle"].contains("skipped")) out.report["verdict"] = "unchecked";
  else out.report["verdict"] = out.exit_code == kOk ? "match" : "mismatch";
}

inline void cmd_snf(const std::string& spec, Outcome& out) {
  const ParsedMatrix m = parse_matrix_spec(spec);
  out.report["ring"] = m.ring.to_string();
  auto run = [&](auto tag) {
    using T = decltype(tag);
    Matrix<T> a;
    for (const auto& row : m.rows) {
      std::vector<T> r;
      for (const auto& x : row) r.push_back(std::get<T>(x));
      a.push_back(std::move(r));
    }
    const T like = std::get<T>(ring_zero(m.ring));
    const auto s = smith_normal_form(a, like);
    auto matrix_json = [](const Matrix<T>& x) {
      Json j = Json::array();
      for (const auto& row : x) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(EuclideanTraits<T>::to_string(v));
        j.push_back(r);
      }
      return j;
    };
    Json diag = Json::array();
    for (const auto& v : s.diagonal) diag.push_back(EuclideanTraits<T>::to_string(v));
    out.report["diagonal"] = diag;
    out.report["U"] = matrix_json(s.U);
    out.report["V"] = matrix_json(s.V);
  };
  switch (m.ring.kind()) {
    case RingKind::Integers: run(std::int64_t{}); break;
    case RingKind::PolyOverPrimeField: run(FpPoly{}); break;
    default: throw CoverError(ErrorCode::UnsupportedRing, "snf works over Z and Fp[t]");
  }
  out.report["cokernel"] = render(descriptor_from_presentation(m.ring, m.rows, 0));
}

inline void cmd_s_set(const std::vector<std::string>& args, Outcome& out) {
  if (args.size() != 2) throw UsageError("usage: s-set \"<ring>\" <n>");
  const RingHandle r = parse_ring(args[0]);
  std::uint64_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoull(args[1], &used);
    if (used != args[1].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UsageError("s-set: n must be a positive integer");
  }
  out.report["ring"] = r.to_string();
  out.report["n"] = n;
  Json list = Json::array();
  for (const auto& d : s_set(r, n)) list.push_back(render(d));
  out.report["modules"] = list;
}

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void render_human(const Json& j, const std::string& indent, std::ostringstream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object()) {
      os << indent << it.key() << ":\n";
      render_human(v, indent + "  ", os);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << indent << it.key() << ":\n";
      for (const auto& item : v) {
        std::string line;
        for (auto f = item.begin(); f != item.end(); ++f) line += (line.empty() ? "" : ", ") + f.key() + "=" + scalar_text(f.value());
        os << indent << "  - " << line << "\n";
      }
    } else if (v.is_array()) {
      std::string line;
      for (const auto& item : v) line += (line.empty() ? "" : "; ") + scalar_text(item);
      os << indent << it.key() << ": [" << line << "]\n";
    } else {
      os << indent << it.key() << ": " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace detail

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> all{"sigma", "cover", "phi", "coset-cover", "monoid", "oracle", "verify", "snf", "s-set"};
  return all;
}

/// Runs one command. Library and parse failures become an error report with
/// exit code 65; UsageError propagates so the caller can print usage (exit 64).
inline Outcome run(const std::string& command, const std::vector<std::string>& args, const Options& options = {}) {
  Outcome out;
  out.report["command"] = command;
  out.report["arguments"] = args;
  const auto started = std::chrono::steady_clock::now();
  auto one_arg = [&]() -> const std::string& {
    if (args.size() != 1) throw UsageError(command + " takes exactly one quoted specification");
    return args.front();
  };
  try {
    if (command == "sigma") {
      detail::cmd_sigma(one_arg(), options, out, false);
    } else if (command == "cover") {
      detail::cmd_sigma(one_arg(), options, out, true);
    } else if (command == "phi") {
      detail::cmd_phi(one_arg(), options, out);
    } else if (command == "coset-cover") {
      detail::cmd_coset_cover(one_arg(), options, out);
    } else if (command == "monoid") {
      detail::cmd_monoid(one_arg(), options, out);
    } else if (command == "oracle") {
      detail::cmd_oracle(args, options, out);
    } else if (command == "verify") {
      detail::cmd_verify(one_arg(), options, out);
    } else if (command == "snf") {
      detail::cmd_snf(one_arg(), out);
    } else if (command == "s-set") {
      detail::cmd_s_set(args, out);
    } else {
      throw UsageError("unknown command '" + command + "'");
    }
  } catch (const CoverError& e) {
    Json err{{"code", to_string(e.code())}, {"message", e.what()}};
    if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) err["position"] = se->position();
    out.report["error"] = err;
    out.exit_code = kDataError;
  }
  if (options.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    out.report["timing_ms"] = ms;
  }
  return out;
}

inline std::string render_human(const Json& report) {
  std::ostringstream os;
  detail::render_human(report, "", os);
  return os.str();
}

}  // namespace covercalc::cli

#pragma once

// Job files: strict JSON schema, round-trip serialization, dispatch, and the
// report writer used by the command-line front end.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "jensen_lab/error.hpp"
#include "jensen_lab/instance.hpp"
#include "jensen_lab/jensen.hpp"
#include "jensen_lab/search_lab.hpp"
#include "jensen_lab/shape_check.hpp"
#include "jensen_lab/sp_certify.hpp"

namespace jlab {

inline constexpr const char* kVersion = "1.0.0";

using ojson = nlohmann::ordered_json;

enum class Command { certify_sp, moments, check_shape, check_jensen, mine, optimize_example, fuzz };

inline constexpr std::array<std::pair<Command, const char*>, 7> kCommandNames{{
    {Command::certify_sp, "certify-sp"},
    {Command::moments, "moments"},
    {Command::check_shape, "check-shape"},
    {Command::check_jensen, "check-jensen"},
    {Command::mine, "mine"},
    {Command::optimize_example, "optimize-example"},
    {Command::fuzz, "fuzz"},
}};

inline const char* command_name(Command c) {
  for (const auto& [cmd, name] : kCommandNames)
    if (cmd == c) return name;
  return "?";
}

inline std::optional<Command> parse_command(std::string_view s) {
  for (const auto& [cmd, name] : kCommandNames)
    if (s == name) return cmd;
  return std::nullopt;
}

enum class ParamKind { real, count, seed, flag, text };

struct ParamSpec {
  const char* name;
  ParamKind kind;
};

/// Every accepted key of "params"; the order here is the canonical serialization order.
inline constexpr std::array<ParamSpec, 27> kParamSpecs{{
    {"shape", ParamKind::text},       {"c", ParamKind::real},
    {"d", ParamKind::real},           {"a", ParamKind::real},
    {"b", ParamKind::real},           {"lo", ParamKind::real},
    {"hi", ParamKind::real},          {"y_lo", ParamKind::real},
    {"y_hi", ParamKind::real},        {"t", ParamKind::real},
    {"concave", ParamKind::flag},     {"relaxed", ParamKind::flag},
    {"suppress_range", ParamKind::flag}, {"allow_d_at_hi", ParamKind::flag},
    {"seed", ParamKind::seed},        {"budget", ParamKind::count},
    {"trials", ParamKind::count},     {"grid", ParamKind::count},
    {"scan_resolution", ParamKind::count}, {"panels", ParamKind::count},
    {"nodes", ParamKind::count},      {"refine_limit", ParamKind::count},
    {"abs_tol", ParamKind::real},     {"shape_tol", ParamKind::real},
    {"cert_tol", ParamKind::real},    {"hyp_tol", ParamKind::real},
    {"gap_tol", ParamKind::real},
}};

inline constexpr std::array<const char*, 4> kShapeNames{"convex", "point_symmetry", "left_almost_convex",
                                                        "weight_admissible"};

struct Job {
  Command command = Command::certify_sp;
  std::optional<SignedMeasure> measure;
  std::optional<FunctionSpec> function;
  std::optional<FunctionSpec> weight;
  std::optional<Theorem> theorem;
  std::optional<std::vector<double>> points;
  std::optional<std::vector<double>> weights;
  ojson params = ojson::object();  // validated, canonical order

  std::optional<double> real(const char* key) const {
    if (!params.contains(key)) return std::nullopt;
    return params.at(key).get<double>();
  }
  double real_or(const char* key, double fallback) const { return real(key).value_or(fallback); }
  long count_or(const char* key, long fallback) const {
    return params.contains(key) ? params.at(key).get<long>() : fallback;
  }
  std::optional<std::uint64_t> seed() const {
    if (!params.contains("seed")) return std::nullopt;
    return params.at("seed").get<std::uint64_t>();
  }
  bool flag(const char* key) const { return params.contains(key) && params.at(key).get<bool>(); }
  std::optional<std::string> text(const char* key) const {
    if (!params.contains(key)) return std::nullopt;
    return params.at(key).get<std::string>();
  }
};

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

inline const ojson& require_key(const ojson& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw SchemaError(path + "/" + key, "required field is missing");
  return obj.at(key);
}

inline void expect_object(const ojson& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
}

template <std::size_t N>
void reject_unknown(const ojson& obj, const std::string& path, const std::array<const char*, N>& allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) throw SchemaError(path + "/" + item.key(), "unknown field");
  }
}

inline double read_real(const ojson& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

inline std::vector<double> read_reals(const ojson& j, const std::string& path, bool nonempty) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  if (nonempty && j.empty()) throw SchemaError(path, "expected a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_real(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline Point2 read_point(const ojson& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected a pair [x, y]");
  return {read_real(j[0], path + "/0"), read_real(j[1], path + "/1")};
}

inline Interval read_interval(const ojson& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected an interval [lo, hi]");
  const double lo = read_real(j[0], path + "/0");
  const double hi = read_real(j[1], path + "/1");
  if (!(lo < hi)) throw SchemaError(path, "expected lo < hi");
  return Interval(lo, hi);
}

/// Runs a constructor, reporting its validation failures at `path`.
template <class F>
auto construct_at(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
}

inline FunctionSpec read_function(const ojson& j, const std::string& path);

inline std::optional<Family> family_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Family::callable); ++i)
    if (s == family_name(static_cast<Family>(i))) return static_cast<Family>(i);
  return std::nullopt;
}

inline FunctionSpec read_function(const ojson& j, const std::string& path) {
  expect_object(j, path);
  reject_unknown(j, path, std::array{"family", "params", "domain"});
  const ojson& fam_j = require_key(j, path, "family");
  if (!fam_j.is_string()) throw SchemaError(path + "/family", "expected a string");
  const std::optional<Family> fam = family_from_name(fam_j.get<std::string>());
  if (!fam || *fam == Family::callable)
    throw SchemaError(path + "/family",
                      "unknown family '" + fam_j.get<std::string>() +
                          "' (expected polynomial, tan, odd_power, piecewise_linear, grid_samples, odd_extension, "
                          "point_symmetric_extension, chord, glue, reflect or scale)");
  const Interval domain = read_interval(require_key(j, path, "domain"), path + "/domain");
  static const ojson empty = ojson::object();
  const ojson& p = j.contains("params") ? j.at("params") : empty;
  const std::string pp = path + "/params";
  expect_object(p, pp);

  auto real_at = [&](const char* k) { return read_real(require_key(p, pp, k), pp + "/" + k); };
  auto fn_at = [&](const char* k) { return read_function(require_key(p, pp, k), pp + "/" + k); };

  switch (*fam) {
    case Family::polynomial: {
      reject_unknown(p, pp, std::array{"coeffs"});
      auto coeffs = read_reals(require_key(p, pp, "coeffs"), pp + "/coeffs", true);
      return construct_at(path, [&] { return FunctionSpec::polynomial(coeffs, domain); });
    }
    case Family::tan:
      reject_unknown(p, pp, std::array<const char*, 0>{});
      return construct_at(path + "/domain", [&] { return FunctionSpec::tan(domain); });
    case Family::odd_power: {
      reject_unknown(p, pp, std::array{"exponent"});
      const double e = real_at("exponent");
      return construct_at(pp + "/exponent", [&] { return FunctionSpec::odd_power(e, domain); });
    }
    case Family::piecewise_linear: {
      reject_unknown(p, pp, std::array{"knots"});
      const ojson& kj = require_key(p, pp, "knots");
      if (!kj.is_array()) throw SchemaError(pp + "/knots", "expected an array of [x, y] pairs");
      std::vector<Point2> knots;
      for (std::size_t i = 0; i < kj.size(); ++i) knots.push_back(read_point(kj[i], pp + "/knots/" + std::to_string(i)));
      return construct_at(pp + "/knots", [&] { return FunctionSpec::piecewise_linear(knots, domain); });
    }
    case Family::grid_samples: {
      reject_unknown(p, pp, std::array{"samples"});
      auto samples = read_reals(require_key(p, pp, "samples"), pp + "/samples", true);
      return construct_at(pp + "/samples", [&] { return FunctionSpec::grid_samples(samples, domain); });
    }
    case Family::odd_extension: {
      reject_unknown(p, pp, std::array{"base"});
      FunctionSpec base = fn_at("base");
      return construct_at(path, [&] { return FunctionSpec::odd_extension(base, domain); });
    }
    case Family::point_symmetric_extension: {
      reject_unknown(p, pp, std::array{"base", "center"});
      FunctionSpec base = fn_at("base");
      const double center = real_at("center");
      return construct_at(path, [&] { return FunctionSpec::point_symmetric_extension(base, center, domain); });
    }
    case Family::chord: {
      reject_unknown(p, pp, std::array{"p1", "p2"});
      const Point2 p1 = read_point(require_key(p, pp, "p1"), pp + "/p1");
      const Point2 p2 = read_point(require_key(p, pp, "p2"), pp + "/p2");
      return construct_at(path, [&] { return FunctionSpec::chord(p1, p2, domain); });
    }
    case Family::glue: {
      reject_unknown(p, pp, std::array{"left", "right", "split"});
      FunctionSpec left = fn_at("left");
      FunctionSpec right = fn_at("right");
      const double split = real_at("split");
      return construct_at(path, [&] { return FunctionSpec::glue(left, right, split, domain); });
    }
    case Family::reflect: {
      reject_unknown(p, pp, std::array{"base"});
      FunctionSpec base = fn_at("base");
      return construct_at(path, [&] { return FunctionSpec::reflect(base, domain); });
    }
    case Family::scale: {
      reject_unknown(p, pp, std::array{"base", "factor"});
      FunctionSpec base = fn_at("base");
      const double factor = real_at("factor");
      return construct_at(path, [&] { return FunctionSpec::scale(base, factor, domain); });
    }
    case Family::callable: break;
  }
  throw SchemaError(path + "/family", "unsupported family");
}

inline SignedMeasure read_measure(const ojson& j, const std::string& path) {
  expect_object(j, path);
  const ojson& type = require_key(j, path, "type");
  if (!type.is_string() || (type != "discrete" && type != "density"))
    throw SchemaError(path + "/type", "expected \"discrete\" or \"density\"");
  const Interval iv = read_interval(require_key(j, path, "interval"), path + "/interval");
  if (type == "discrete") {
    reject_unknown(j, path, std::array{"type", "interval", "atoms"});
    const ojson& aj = require_key(j, path, "atoms");
    if (!aj.is_array() || aj.empty()) throw SchemaError(path + "/atoms", "expected a nonempty array of [x, w] pairs");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < aj.size(); ++i) {
      const Point2 p = read_point(aj[i], path + "/atoms/" + std::to_string(i));
      atoms.push_back({p.x, p.y});
    }
    return construct_at(path + "/atoms", [&] { return SignedMeasure(DiscreteSignedMeasure(atoms, iv)); });
  }
  reject_unknown(j, path, std::array{"type", "interval", "density", "breakpoints"});
  FunctionSpec rho = read_function(require_key(j, path, "density"), path + "/density");
  std::vector<double> bps;
  if (j.contains("breakpoints")) bps = read_reals(j.at("breakpoints"), path + "/breakpoints", false);
  return construct_at(path, [&] { return SignedMeasure(DensitySignedMeasure(iv, rho, bps)); });
}

inline ojson read_params(const ojson& j, const std::string& path) {
  expect_object(j, path);
  for (const auto& item : j.items()) {
    bool known = false;
    for (const ParamSpec& s : kParamSpecs) known = known || item.key() == s.name;
    if (!known) throw SchemaError(path + "/" + item.key(), "unknown parameter");
  }
  ojson out = ojson::object();
  for (const ParamSpec& s : kParamSpecs) {
    if (!j.contains(s.name)) continue;
    const ojson& v = j.at(s.name);
    const std::string at = path + "/" + s.name;
    switch (s.kind) {
      case ParamKind::real: out[s.name] = read_real(v, at); break;
      case ParamKind::flag:
        if (!v.is_boolean()) throw SchemaError(at, "expected true or false");
        out[s.name] = v.get<bool>();
        break;
      case ParamKind::count:
        if (!v.is_number_integer() || v.get<long long>() < 0 ||
            (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(1) << 40))
          throw SchemaError(at, "expected a nonnegative integer");
        out[s.name] = v.get<long>();
        break;
      case ParamKind::seed:
        if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)))
          throw SchemaError(at, "expected a nonnegative 64-bit integer");
        out[s.name] = v.get<std::uint64_t>();
        break;
      case ParamKind::text: {
        if (!v.is_string()) throw SchemaError(at, "expected a string");
        const std::string t = v.get<std::string>();
        bool ok = false;
        for (const char* n : kShapeNames) ok = ok || t == n;
        if (!ok)
          throw SchemaError(at, "expected one of convex, point_symmetry, left_almost_convex, weight_admissible");
        out[s.name] = t;
        break;
      }
    }
  }
  return out;
}

inline void require_field(bool present, const std::string& path, const char* why) {
  if (!present) throw SchemaError(path, std::string("required field is missing (") + why + ")");
}

/// Field-level requirements of each command, checked before dispatch.
inline void validate_requirements(const Job& job) {
  const std::string cmd = command_name(job.command);
  auto need_param = [&](const char* key) { require_field(job.params.contains(key), std::string("/params/") + key, cmd.c_str()); };
  switch (job.command) {
    case Command::certify_sp:
    case Command::moments: require_field(job.measure.has_value(), "/measure", cmd.c_str()); break;
    case Command::check_shape: {
      need_param("shape");
      const std::string shape = *job.text("shape");
      if (shape == "weight_admissible") {
        require_field(job.weight.has_value(), "/weight", "check-shape weight_admissible");
        need_param("a");
        need_param("b");
      } else {
        require_field(job.function.has_value(), "/function", "check-shape");
      }
      if (shape == "point_symmetry") need_param("c");
      if (shape == "left_almost_convex") {
        need_param("c");
        need_param("d");
      }
      break;
    }
    case Command::check_jensen: {
      require_field(job.theorem.has_value(), "/theorem", "check-jensen");
      const std::string th = std::string("check-jensen ") + theorem_name(*job.theorem);
      require_field(job.function.has_value(), "/function", th.c_str());
      switch (*job.theorem) {
        case Theorem::thm1:
          require_field(job.measure.has_value(), "/measure", th.c_str());
          need_param("c");
          break;
        case Theorem::cor1:
          require_field(job.weight.has_value(), "/weight", th.c_str());
          need_param("a");
          need_param("b");
          break;
        case Theorem::cor2:
          require_field(job.points.has_value(), "/points", th.c_str());
          require_field(job.weights.has_value(), "/weights", th.c_str());
          if (job.points->size() != job.weights->size())
            throw SchemaError("/weights", "expected as many weights as points");
          break;
        case Theorem::cor3: require_field(job.points.has_value(), "/points", th.c_str()); break;
        case Theorem::thm3:
          require_field(job.measure.has_value(), "/measure", th.c_str());
          need_param("c");
          need_param("d");
          break;
      }
      break;
    }
    case Command::mine:
    case Command::optimize_example: need_param("seed"); break;
    case Command::fuzz:
      require_field(job.theorem.has_value(), "/theorem", "fuzz");
      need_param("seed");
      break;
  }
  for (const char* k : {"budget", "trials"})
    if (job.params.contains(k) && job.params.at(k).get<long>() < 1) throw SchemaError(std::string("/params/") + k, "expected >= 1");
}

}  // namespace detail

/// Validates an already-parsed JSON document against the job schema.
inline Job parse_job_value(const ojson& j) {
  detail::expect_object(j, "");
  detail::reject_unknown(j, "", std::array{"command", "measure", "function", "weight", "theorem", "points", "weights",
                                           "params"});
  Job job;
  const ojson& cmd = detail::require_key(j, "", "command");
  if (!cmd.is_string() || !parse_command(cmd.get<std::string>()))
    throw SchemaError("/command",
                      "expected one of certify-sp, moments, check-shape, check-jensen, mine, optimize-example, fuzz");
  job.command = *parse_command(cmd.get<std::string>());

  if (j.contains("theorem")) {
    const ojson& t = j.at("theorem");
    if (!t.is_string() || !parse_theorem(t.get<std::string>()))
      throw SchemaError("/theorem", "expected one of thm1, cor1, cor2, cor3, thm3");
    job.theorem = *parse_theorem(t.get<std::string>());
  }
  if (j.contains("params")) job.params = detail::read_params(j.at("params"), "/params");
  if (j.contains("measure")) job.measure = detail::read_measure(j.at("measure"), "/measure");
  if (j.contains("function")) job.function = detail::read_function(j.at("function"), "/function");
  if (j.contains("weight")) job.weight = detail::read_function(j.at("weight"), "/weight");
  if (j.contains("points")) job.points = detail::read_reals(j.at("points"), "/points", true);
  if (j.contains("weights")) job.weights = detail::read_reals(j.at("weights"), "/weights", true);
  detail::validate_requirements(job);
  return job;
}

/// Parses raw JSON text. Malformed text raises ParseError with the byte offset.
inline ojson parse_json_text(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

inline Job parse_job(const std::string& text) { return parse_job_value(parse_json_text(text)); }

// ---------------------------------------------------------------------------
// Serialization.

inline ojson to_json(const Interval& iv) { return ojson::array({iv.lo(), iv.hi()}); }

inline ojson to_json(const FunctionSpec& f) {
  ojson params = ojson::object();
  std::visit(detail::overloaded{
                 [&](const fam::Polynomial& p) { params["coeffs"] = p.coeffs; },
                 [&](const fam::Tan&) {},
                 [&](const fam::OddPower& p) { params["exponent"] = p.exponent; },
                 [&](const fam::PiecewiseLinear& p) {
                   ojson ks = ojson::array();
                   for (const Point2& k : p.knots) ks.push_back(ojson::array({k.x, k.y}));
                   params["knots"] = ks;
                 },
                 [&](const fam::GridSamples& p) { params["samples"] = p.samples; },
                 [&](const fam::OddExtension& p) { params["base"] = to_json(p.base); },
                 [&](const fam::PointSymmetricExtension& p) {
                   params["base"] = to_json(p.base);
                   params["center"] = p.center;
                 },
                 [&](const fam::Chord& p) {
                   params["p1"] = ojson::array({p.p1.x, p.p1.y});
                   params["p2"] = ojson::array({p.p2.x, p.p2.y});
                 },
                 [&](const fam::Glue& p) {
                   params["left"] = to_json(p.left);
                   params["right"] = to_json(p.right);
                   params["split"] = p.split;
                 },
                 [&](const fam::Reflect& p) { params["base"] = to_json(p.base); },
                 [&](const fam::Scale& p) {
                   params["base"] = to_json(p.base);
                   params["factor"] = p.factor;
                 },
                 [&](const fam::Callable& p) {
                   throw InputError("callable function '" + p.label + "' cannot be serialized");
                 },
             },
             f.node().payload);
  ojson out = ojson::object();
  out["family"] = family_name(f.family());
  out["params"] = params;
  out["domain"] = to_json(f.domain());
  return out;
}

inline ojson to_json(const SignedMeasure& m) {
  ojson out = ojson::object();
  if (m.is_discrete()) {
    out["type"] = "discrete";
    out["interval"] = to_json(m.interval());
    ojson atoms = ojson::array();
    for (const Atom& a : m.discrete().atoms()) atoms.push_back(ojson::array({a.position, a.weight}));
    out["atoms"] = atoms;
  } else {
    const DensitySignedMeasure& d = m.density();
    out["type"] = "density";
    out["interval"] = to_json(d.interval());
    out["density"] = to_json(d.density());
    out["breakpoints"] = d.breakpoints();
  }
  return out;
}

inline ojson serialize_job(const Job& job) {
  ojson out = ojson::object();
  out["command"] = command_name(job.command);
  if (job.theorem) out["theorem"] = theorem_name(*job.theorem);
  if (job.measure) out["measure"] = to_json(*job.measure);
  if (job.function) out["function"] = to_json(*job.function);
  if (job.weight) out["weight"] = to_json(*job.weight);
  if (job.points) out["points"] = *job.points;
  if (job.weights) out["weights"] = *job.weights;
  if (!job.params.empty()) out["params"] = job.params;
  return out;
}

/// The check-jensen job that replays an instance.
inline Job instance_job(const Instance& inst) {
  Job job;
  job.command = Command::check_jensen;
  job.theorem = theorem_of(inst);
  ojson params = ojson::object();
  std::visit(detail::overloaded{
                 [&](const Thm1Instance& i) {
                   job.function = i.f;
                   job.measure = i.m;
                   params["c"] = i.c;
                   if (i.concave) params["concave"] = true;
                 },
                 [&](const Cor1Instance& i) {
                   job.function = i.f;
                   job.weight = i.p;
                   params["a"] = i.a;
                   params["b"] = i.b;
                   if (i.options.relaxed) params["relaxed"] = true;
                   if (!i.options.check_range) params["suppress_range"] = true;
                 },
                 [&](const Cor2Instance& i) {
                   job.function = i.f;
                   job.points = i.points;
                   job.weights = i.weights;
                 },
                 [&](const Cor3Instance& i) {
                   job.function = i.f;
                   job.points = i.points;
                 },
                 [&](const Thm3Instance& i) {
                   job.function = i.f;
                   job.measure = i.m;
                   params["c"] = i.w.c;
                   params["d"] = i.w.d;
                   if (i.w.allow_d_at_hi) params["allow_d_at_hi"] = true;
                 },
             },
             inst);
  job.params = detail::read_params(params, "/params");  // canonical order
  return job;
}

inline ojson to_json(const SteffensenVerdict& v) {
  ojson out = ojson::object();
  out["passes"] = v.passes;
  out["partial_sums"] = v.partial_sums;
  out["total"] = v.total;
  return out;
}

inline ojson to_json(const ProfileWitness& w) {
  ojson out = ojson::object();
  out["t"] = w.t;
  out["value"] = w.value;
  return out;
}

inline ojson to_json(const SPCertificate& c) {
  ojson out = ojson::object();
  out["is_sp"] = c.is_sp;
  out["total_mass"] = c.total_mass;
  out["worst_left"] = to_json(c.worst_left);
  out["worst_right"] = to_json(c.worst_right);
  out["method"] = cert_method_name(c.method);
  out["scan_points"] = c.scan_points;
  return out;
}

inline ojson optional_real(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

inline ojson to_json(const MomentSummary& m) {
  ojson out = ojson::object();
  out["total_mass"] = m.total_mass;
  out["first_moment"] = m.first_moment;
  out["barycenter"] = optional_real(m.barycenter);
  out["barycenter_defined"] = m.barycenter.has_value();
  return out;
}

inline ojson to_json(const ProductMoments& m) {
  ojson out = ojson::object();
  out["mass"] = m.mass;
  out["barycenter_x"] = optional_real(m.barycenter_x);
  out["barycenter_y"] = optional_real(m.barycenter_y);
  return out;
}

inline ojson to_json(const ShapeVerdict& v) {
  ojson out = ojson::object();
  out["satisfied"] = v.satisfied;
  out["worst_point"] = v.worst_point;
  out["worst_margin"] = v.worst_margin;
  out["grid_size"] = v.grid_size;
  return out;
}

inline ojson to_json(const JensenReport& r) {
  ojson out = ojson::object();
  out["theorem"] = theorem_name(r.theorem);
  ojson hyps = ojson::array();
  for (const HypothesisCheck& h : r.hypotheses) {
    ojson hj = ojson::object();
    hj["name"] = h.name;
    hj["satisfied"] = h.satisfied;
    hj["margin"] = h.margin;
    hyps.push_back(hj);
  }
  out["hypotheses"] = hyps;
  out["barycenter"] = r.barycenter;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["gap"] = r.gap;
  out["verdict"] = verdict_name(r.verdict);
  out["flags"] = r.flags;
  return out;
}

inline ojson to_json(const SearchResult& r) {
  ojson out = ojson::object();
  out["best_value"] = r.best_value;
  out["best_point"] = r.best_point;
  out["feasible_evaluations"] = r.feasible_evaluations;
  out["total_evaluations"] = r.total_evaluations;
  out["seed"] = r.seed;
  ojson nz = ojson::array();
  for (const auto& p : r.near_zero_points) nz.push_back(ojson::array({p[0], p[1], p[2]}));
  out["near_zero_points"] = nz;
  return out;
}

inline ojson to_json(const CounterexampleResult& r) {
  ojson out = ojson::object();
  out["found"] = r.found;
  out["observed_gap"] = r.found ? ojson(r.observed_gap) : ojson(nullptr);
  out["evaluations"] = r.evaluations;
  out["seed"] = r.seed;
  out["witness"] = r.witness ? serialize_job(instance_job(*r.witness)) : ojson(nullptr);
  return out;
}

inline ojson to_json(const FuzzReport& r) {
  ojson out = ojson::object();
  out["theorem"] = theorem_name(r.theorem);
  out["requested"] = r.requested;
  out["draws"] = r.draws;
  out["passed"] = r.passed;
  out["hypothesis_failed"] = r.hypothesis_failed;
  out["violated"] = r.violated;
  out["hypothesis_pass_rate"] = r.pass_rate();
  out["min_gap"] = r.hypothesis_passing() > 0 ? ojson(r.min_gap) : ojson(nullptr);
  out["seed"] = r.seed;
  out["first_violation"] = r.first_violation ? serialize_job(instance_job(*r.first_violation)) : ojson(nullptr);
  out["first_violation_trial"] = r.first_violation_trial;
  return out;
}

// ---------------------------------------------------------------------------
// Stable text output: fixed key order, 17 significant digits, null for non-finite.

namespace detail {

inline std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_stable(const ojson& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + ojson(item.key()).dump() + (indent > 0 ? ": " : ":");
        write_stable(item.value(), indent, depth + 1, out);
      }
      out += nl + close_pad + "}";
      return;
    }
    case ojson::value_t::array: {
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? (indent > 0 ? ", " : ",") : ",";
        if (!flat) out += nl + pad;
        first = false;
        write_stable(e, indent, depth + 1, out);
      }
      if (!flat) out += nl + close_pad;
      out += "]";
      return;
    }
    case ojson::value_t::number_float: out += format_real(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

inline std::string dump_stable(const ojson& j, int indent = 2) {
  std::string out;
  detail::write_stable(j, indent, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch.

struct Report {
  ojson json;
  int exit_code = 0;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int hypothesis_failed = 1;
inline constexpr int violated = 2;
inline constexpr int input_error = 3;
inline constexpr int non_convergence = 4;
}  // namespace exit_code

inline int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::holds: return exit_code::ok;
    case Verdict::hypothesis_failed: return exit_code::hypothesis_failed;
    case Verdict::violated: return exit_code::violated;
  }
  return exit_code::violated;
}

inline Settings settings_from(const Job& job) {
  Settings s;
  s.quad.panels_per_segment = static_cast<int>(job.count_or("panels", s.quad.panels_per_segment));
  s.quad.nodes_per_panel = static_cast<int>(job.count_or("nodes", s.quad.nodes_per_panel));
  s.quad.refine_limit = static_cast<int>(job.count_or("refine_limit", s.quad.refine_limit));
  s.quad.abs_tol = job.real_or("abs_tol", s.quad.abs_tol);
  s.grid = static_cast<int>(job.count_or("grid", s.grid));
  s.scan_resolution = static_cast<int>(job.count_or("scan_resolution", s.scan_resolution));
  s.shape_tol = job.real_or("shape_tol", s.shape_tol);
  s.cert_tol = job.real_or("cert_tol", s.cert_tol);
  s.hyp_tol = job.real_or("hyp_tol", s.hyp_tol);
  s.gap_tol = job.real_or("gap_tol", s.gap_tol);
  s.validate();
  return s;
}

inline constexpr long kDefaultBudget = 100000;
inline constexpr long kDefaultTrials = 10000;

namespace detail {

inline void write_csv(const std::string& path, const char* header, const std::vector<std::array<double, 3>>& rows,
                      int columns) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open CSV file '" + path + "' for writing");
  os << header << '\n';
  for (const auto& r : rows) {
    for (int c = 0; c < columns; ++c) os << (c ? "," : "") << format_real(r[static_cast<std::size_t>(c)]);
    os << '\n';
  }
  if (!os) throw InputError("failed writing CSV file '" + path + "'");
}

inline Interval interval_param(const Job& job, const Interval& fallback) {
  const double lo = job.real_or("lo", fallback.lo());
  const double hi = job.real_or("hi", fallback.hi());
  if (!(lo < hi)) throw SchemaError("/params/hi", "expected lo < hi");
  return Interval(lo, hi);
}

inline Instance instance_from(const Job& job) {
  const FunctionSpec& f = *job.function;
  switch (*job.theorem) {
    case Theorem::thm1: return Thm1Instance{f, *job.real("c"), *job.measure, job.flag("concave")};
    case Theorem::cor1: {
      Cor1Options opt;
      opt.relaxed = job.flag("relaxed");
      opt.check_range = !job.flag("suppress_range");
      return Cor1Instance{f, *job.weight, *job.real("a"), *job.real("b"), opt};
    }
    case Theorem::cor2: return Cor2Instance{*job.points, *job.weights, f};
    case Theorem::cor3: return Cor3Instance{*job.points, f};
    case Theorem::thm3:
      return Thm3Instance{f, *job.measure, AlmostConvexWitness{*job.real("c"), *job.real("d"), job.flag("allow_d_at_hi")}};
  }
  throw SchemaError("/theorem", "unsupported theorem");
}

}  // namespace detail

/// Runs a validated job. Library errors propagate as exceptions; the caller maps them to exit codes.
inline Report execute(const Job& job, const std::optional<std::string>& csv_path = std::nullopt) {
  const auto start = std::chrono::steady_clock::now();
  const Settings s = settings_from(job);
  Report rep;
  ojson result = ojson::object();
  auto no_csv = [&] {
    if (csv_path) throw InputError(std::string("--csv is not supported for ") + command_name(job.command));
  };

  switch (job.command) {
    case Command::certify_sp: {
      const SPCertificate cert = certify_sp(*job.measure, s);
      result = to_json(cert);
      if (job.measure->is_discrete()) result["steffensen"] = to_json(check_steffensen_discrete(job.measure->discrete()));
      rep.exit_code = cert.is_sp ? exit_code::ok : exit_code::hypothesis_failed;
      if (csv_path) {
        std::vector<std::array<double, 3>> rows;
        for (const ProfileSample& p : profile_curve(*job.measure, s.scan_resolution, s.quad)) rows.push_back({p.t, p.left, p.right});
        detail::write_csv(*csv_path, "t,left,right", rows, 3);
      }
      break;
    }
    case Command::moments: {
      no_csv();
      result = to_json(moments(*job.measure, s.quad));
      if (job.function) result["integral"] = integrate(*job.function, *job.measure, s.quad);
      if (job.params.contains("y_lo") || job.params.contains("y_hi")) {
        if (!job.params.contains("y_lo") || !job.params.contains("y_hi"))
          throw SchemaError("/params", "y_lo and y_hi must be given together");
        if (job.measure->is_discrete()) throw SchemaError("/measure/type", "product moments need a density measure");
        const double ylo = *job.real("y_lo");
        const double yhi = *job.real("y_hi");
        if (!(ylo < yhi)) throw SchemaError("/params/y_hi", "expected y_lo < y_hi");
        result["product"] = to_json(iterated_product_moments(job.measure->density(), Interval(ylo, yhi), s.quad));
      }
      rep.exit_code = exit_code::ok;
      break;
    }
    case Command::check_shape: {
      const std::string shape = *job.text("shape");
      ShapeVerdict v;
      const bool trace = csv_path.has_value();
      if (shape == "convex") {
        v = check_convex_on(*job.function, detail::interval_param(job, job.function->domain()), s, trace);
      } else if (shape == "point_symmetry") {
        v = check_point_symmetry(*job.function, *job.real("c"), detail::interval_param(job, job.function->domain()), s,
                                 trace);
      } else if (shape == "left_almost_convex") {
        no_csv();
        v = check_left_almost_convex(*job.function,
                                     AlmostConvexWitness{*job.real("c"), *job.real("d"), job.flag("allow_d_at_hi")}, s);
      } else {
        v = check_weight_admissible(*job.weight, *job.real("a"), *job.real("b"), job.flag("relaxed"), s, trace);
      }
      result = to_json(v);
      result["shape"] = shape;
      rep.exit_code = v.satisfied ? exit_code::ok : exit_code::hypothesis_failed;
      if (csv_path) {
        std::vector<std::array<double, 3>> rows;
        for (const auto& [x, m] : v.trace) rows.push_back({x, m, 0.0});
        detail::write_csv(*csv_path, "x,margin", rows, 2);
      }
      break;
    }
    case Command::check_jensen: {
      no_csv();
      const JensenReport r = verify(detail::instance_from(job), s);
      result = to_json(r);
      rep.exit_code = exit_code_for(r.verdict);
      break;
    }
    case Command::mine: {
      no_csv();
      const CounterexampleResult r =
          mine_cor1_sharpness(job.real_or("b", 1.0), job.count_or("budget", kDefaultBudget), *job.seed(), s);
      result = to_json(r);
      rep.exit_code = exit_code::ok;
      break;
    }
    case Command::optimize_example: {
      no_csv();
      const SearchResult r = optimize_tan_example(job.count_or("budget", kDefaultBudget), *job.seed());
      result = to_json(r);
      rep.exit_code = r.best_value > 1e-9 ? exit_code::violated : exit_code::ok;
      break;
    }
    case Command::fuzz: {
      no_csv();
      const FuzzReport r = fuzz_theorem(*job.theorem, job.count_or("trials", kDefaultTrials), *job.seed(), s);
      result = to_json(r);
      rep.exit_code = r.violated > 0 ? exit_code::violated : exit_code::ok;
      break;
    }
  }

  const auto elapsed = std::chrono::steady_clock::now() - start;
  rep.json = ojson::object();
  rep.json["version"] = kVersion;
  rep.json["command"] = command_name(job.command);
  rep.json["job_echo"] = serialize_job(job);
  rep.json["result"] = result;
  rep.json["exit_code"] = rep.exit_code;
  rep.json["runtime_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return rep;
}

}  // namespace jlab

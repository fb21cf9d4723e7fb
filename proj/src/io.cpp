#include "skewrank/io.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "skewrank/bundle.hpp"
#include "skewrank/classify.hpp"
#include "skewrank/normal_forms.hpp"
#include "skewrank/rank.hpp"
#include "skewrank/stabilizer.hpp"

namespace skewrank {

using nlohmann::json;

namespace {

std::string scalar_str(const Scalar& s) { return s.str(); }

json scalar_list_to_json(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_str(s));
  return a;
}

json tensor_to_json(const SkewTensor& w) { return matrix_to_json(w.matrix()); }

std::string locus_name(LocusKind k) {
  switch (k) {
    case LocusKind::Empty: return "empty";
    case LocusKind::Conic: return "conic";
    case LocusKind::PencilLine: return "pencil_line";
    case LocusKind::All: return "all";
  }
  throw InternalError("bad locus kind");
}

json certificate_to_json(const RankCertificate& cert) {
  json j;
  j["holds"] = cert.holds;
  if (!cert.reason.empty()) j["reason"] = cert.reason;
  if (cert.cubic) j["pfaffian_cubic"] = poly_to_json(*cert.cubic);
  if (cert.macaulay) {
    j["macaulay"] = {{"saturation_degree", cert.macaulay->saturation_degree},
                     {"achieved_rank", cert.macaulay->achieved_rank},
                     {"target_rank", cert.macaulay->target_rank},
                     {"empty", cert.macaulay->empty}};
  }
  return j;
}

json order5_to_json(const Order5Report& r) {
  json j;
  j["branch"] = r.branch == Order5Branch::GIsE3 ? "g_is_e3" : "g_is_e4";
  j["f_params"] = scalar_list_to_json(r.f_params);
  json gens = json::array();
  for (const auto& g : r.reduced_generators) gens.push_back(tensor_to_json(g));
  j["reduced_generators"] = std::move(gens);
  j["reduction_basis"] = matrix_to_json(r.reduction_basis);
  return j;
}

json orbit_to_json(const OrbitReport& r) {
  json j;
  j["label"] = label_name(r.label);
  j["field"] = field_descriptor(r.field);
  j["radicands"] = scalar_list_to_json(r.extension_radicands);
  if (r.witness) j["witness"] = matrix_to_json(*r.witness);
  if (r.hyperplane_witness)
    j["hyperplane"] = subspace_to_json(*r.hyperplane_witness);
  if (r.restricted) j["restricted"] = order5_to_json(*r.restricted);
  return j;
}

Scalar parse_entry(const FieldPtr& f, const json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return f->from_int(v.get<long>());
    if (v.is_string()) return f->parse(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " at " + path);
  }
  throw ParseError("scalar entry at " + path + " must be a string or integer");
}

SkewTensor generator_from_json(const json& g, const FieldPtr& f,
                               std::size_t dim, const std::string& path) {
  if (g.is_object() && g.contains("coords")) {
    const json& c = g.at("coords");
    if (!c.is_object())
      throw ParseError(path + ".coords must be an object of pair keys");
    SkewTensor w(f, dim);
    for (const auto& [key, val] : c.items()) {
      std::string digits;
      for (char ch : key)
        if (ch != ',') digits.push_back(ch);
      if (digits.size() != 2 || !std::isdigit(digits[0]) ||
          !std::isdigit(digits[1]))
        throw ParseError("bad coordinate key '" + key + "' at " + path);
      std::size_t i = std::size_t(digits[0] - '0');
      std::size_t j = std::size_t(digits[1] - '0');
      if (i >= j || j >= dim)
        throw ParseError("coordinate key '" + key + "' at " + path +
                         " is not an increasing pair below " +
                         std::to_string(dim));
      w.add_term(i, j, parse_entry(f, val, path + ".coords." + key));
    }
    return w;
  }
  if (!g.is_array())
    throw ParseError(path + " must be a matrix or a {\"coords\": ...} object");
  Matrix m = matrix_from_json(g, f, path);
  if (m.rows() != dim || m.cols() != dim)
    throw BadDimension("generator at " + path + " is not " +
                       std::to_string(dim) + "x" + std::to_string(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (m.at(j, i) != -m.at(i, j))
        throw NotSkew("entry " + path + "[" + std::to_string(j) + "][" +
                      std::to_string(i) + "] breaks skew-symmetry");
  return SkewTensor::from_matrix(m);
}

PlaneLabel label_from_name(const std::string& name) {
  for (auto l : {PlaneLabel::PlaneG, PlaneLabel::PlaneT, PlaneLabel::PlaneP,
                 PlaneLabel::Plane5})
    if (label_name(l) == name) return l;
  throw ParseError("unknown plane label '" + name + "'");
}

MatrixSubspace seeded_conjugate(const MatrixSubspace& space,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-3, 3);
  const FieldPtr& f = space.field();
  for (;;) {
    Matrix g(f, space.dim(), space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i)
      for (std::size_t j = 0; j < space.dim(); ++j)
        g.at(i, j) = f->from_int(d(rng));
    if (!g.det().is_zero()) return space.transform(g);
  }
}

json command_gen(const CommandOptions& opt) {
  FieldPtr f = parse_field_descriptor(opt.field);
  using namespace normal_forms;
  std::optional<MatrixSubspace> space;
  std::optional<PlaneLabel> label;
  if (opt.type == "pi_g") label = PlaneLabel::PlaneG;
  else if (opt.type == "pi_t") label = PlaneLabel::PlaneT;
  else if (opt.type == "pi_p") label = PlaneLabel::PlaneP;
  else if (opt.type == "pi_5") label = PlaneLabel::Plane5;
  else if (opt.type == "pi_5x5") space = pi_5(f);
  else if (opt.type == "ell_g") space = ell_g(f);
  else if (opt.type == "ell_s") space = ell_s(f);
  else
    throw ParseError(
        "unknown generator type '" + opt.type +
        "' (expected pi_g, pi_t, pi_p, pi_5, pi_5x5, ell_g, ell_s)");
  if (label) {
    if (opt.seed != 0) {
      if (f->kind() != FieldKind::Rationals)
        throw BadField("seeded conjugates are generated over q only");
      space = random_plane(*label, opt.seed);
    } else {
      space = canonical_form(*label, f);
    }
  } else if (opt.seed != 0) {
    if (f->kind() != FieldKind::Rationals)
      throw BadField("seeded conjugates are generated over q only");
    space = seeded_conjugate(*space, opt.seed);
  }
  InputDocument doc{*space};
  doc.metadata = {{"type", opt.type}, {"seed", opt.seed}};
  return emit_input(doc);
}

json command_verify_witness(const json& input) {
  if (!input.is_object() || input.value("schema", "") != kSchemaVersion ||
      !input.contains("input") || !input.contains("result"))
    throw ParseError("verify-witness expects a previously emitted " +
                     std::string(kSchemaVersion) + " classification report");
  InputDocument doc = parse_input(input.at("input"));
  const json& res = input.at("result");
  PlaneLabel label = label_from_name(res.at("label").get<std::string>());
  FieldPtr wf = parse_field_descriptor(res.at("field").get<std::string>());
  MatrixSubspace plane = doc.space.promote(wf);
  bool ok = false;
  if (label == PlaneLabel::Plane5) {
    Matrix basis = matrix_from_json(res.at("hyperplane"), wf, "result.hyperplane");
    Subspace h = Subspace::span_of_columns(basis);
    if (h.dim() == 5 && h.ambient() == plane.dim()) {
      Matrix normals = h.basis_columns().transpose().nullspace();
      ok = true;
      for (const auto& g : plane.generators())
        if (!(g.matrix() * normals).is_zero()) ok = false;
    }
  } else {
    Matrix w = matrix_from_json(res.at("witness"), wf, "result.witness");
    if (w.rows() == plane.dim() && w.cols() == plane.dim() &&
        !w.det().is_zero())
      ok = canonical_form(label, wf).transform(w).same_span(plane);
  }
  return json{{"verdict", ok}, {"label", label_name(label)}};
}

json dispatch(const std::string& command, const json& input,
              const CommandOptions& opt,
              std::optional<InputDocument>& echo) {
  if (command == "gen") return command_gen(opt);
  if (command == "verify-witness") return command_verify_witness(input);

  echo = parse_input(input);
  const MatrixSubspace& space = echo->space;

  if (command == "rank-check") {
    RankCertificate cert = constant_rank_four(space);
    return json{{"verdict", cert.holds},
                {"certificate", certificate_to_json(cert)}};
  }
  if (command == "classify-line") {
    LineReport rep = classify_line(space);
    json j{{"kind", rep.kind == LineKind::General ? "general" : "special"}};
    if (rep.pivot) j["pivot"] = subspace_to_json(*rep.pivot);
    if (rep.hyperplane) j["hyperplane"] = subspace_to_json(*rep.hyperplane);
    return j;
  }
  if (command == "classify-plane") {
    OrbitReport rep = classify_plane(space);
    json j = orbit_to_json(rep);
    j["certificate"] = certificate_to_json(constant_rank_four(space));
    return j;
  }
  if (command == "classify-plane5") return order5_to_json(classify_plane_order5(space));
  if (command == "special-locus") {
    SpecialLocus locus = special_locus(space);
    json j{{"kind", locus_name(locus.kind)}};
    if (locus.defining_form) j["form"] = poly_to_json(*locus.defining_form);
    return j;
  }
  if (command == "stabilizer") {
    StabilizerBasis stab = stabilizer_algebra(space);
    json basis = json::array();
    for (const auto& m : stab.basis) basis.push_back(matrix_to_json(m));
    return json{{"dim", stab.dim()},
                {"orbit_dimension", orbit_dimension(space)},
                {"basis", std::move(basis)}};
  }
  if (command == "fingerprint") {
    if (space.k() == 2) {
      auto [d1, d2] = minimal_indices_line(space);
      return json{{"minimal_indices", {d1, d2}}};
    }
    BundleFingerprint fp = plane_kernel_fingerprint(space);
    return json{{"degree0_kernel_dim", fp.degree0_kernel_dim},
                {"degree1_kernel_dim", fp.degree1_kernel_dim}};
  }
  if (command == "no-p3") {
    if (space.k() != 4)
      throw BadDimension("no-p3 takes exactly 4 generators");
    bool verdict = no_constant_rank_3space(space);
    return json{{"verdict", verdict},
                {"certificate", certificate_to_json(constant_rank_four(space))}};
  }
  throw UnknownCommand("unknown command '" + command + "'");
}

void render_value(const json& v, const std::string& prefix, std::ostream& os) {
  if (v.is_object()) {
    for (const auto& [key, val] : v.items())
      render_value(val, prefix.empty() ? key : prefix + "." + key, os);
  } else if (v.is_array()) {
    bool flat = true;
    for (const auto& e : v)
      if (e.is_object() || e.is_array()) flat = false;
    if (flat) {
      os << prefix << ":";
      for (const auto& e : v)
        os << " " << (e.is_string() ? e.get<std::string>() : e.dump());
      os << "\n";
    } else {
      std::size_t i = 0;
      for (const auto& e : v)
        render_value(e, prefix + "[" + std::to_string(i++) + "]", os);
    }
  } else {
    os << prefix << ": "
       << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

}  // namespace

FieldPtr parse_field_descriptor(const std::string& text) {
  if (text == "q") return Field::rationals();
  if (text.rfind("fp:", 0) == 0) {
    const std::string body = text.substr(3);
    try {
      std::size_t used = 0;
      unsigned long p = std::stoul(body, &used);
      if (used != body.size()) throw std::invalid_argument(body);
      return Field::prime_field(p);
    } catch (const std::logic_error&) {
      throw BadField("bad prime in field descriptor '" + text + "'");
    }
  }
  if (text == "qsqrt" || text.rfind("qsqrt:", 0) == 0) {
    FieldPtr f = Field::rationals();
    if (text == "qsqrt") return Field::extend(f, f->from_int(2));
    std::stringstream body(text.substr(6));
    std::string part;
    while (std::getline(body, part, ';')) {
      if (part.empty()) throw BadField("empty radicand in '" + text + "'");
      f = Field::extend(f, f->parse(part));
    }
    if (f->levels() == 0) throw BadField("no radicand in '" + text + "'");
    return f;
  }
  throw BadField("unknown field descriptor '" + text +
                 "' (expected q, qsqrt[:<radicand>...], or fp:<p>)");
}

std::string field_descriptor(const FieldPtr& f) {
  switch (f->kind()) {
    case FieldKind::Rationals:
      return "q";
    case FieldKind::PrimeField:
      return "fp:" + std::to_string(f->modulus());
    case FieldKind::QuadraticTower: {
      std::string out = "qsqrt:";
      bool first = true;
      for (const auto& r : f->radicand_chain()) {
        if (!first) out += ";";
        out += r.str();
        first = false;
      }
      return out;
    }
  }
  throw InternalError("bad field kind");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const FieldPtr& f,
                        const std::string& path) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ParseError(path + " must be an array of rows");
  std::size_t cols = j.front().size();
  Matrix m(f, j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw ParseError("ragged row at " + path + "[" + std::to_string(i) + "]");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(i, c) = parse_entry(f, row.at(c), path + "[" + std::to_string(i) +
                                                 "][" + std::to_string(c) + "]");
  }
  return m;
}

json poly_to_json(const HomogPoly& p) {
  json terms = json::object();
  for (const auto& [mono, coeff] : p.terms()) {
    std::string key;
    for (std::size_t v = 0; v < mono.size(); ++v) {
      if (v) key += ",";
      key += std::to_string(mono[v]);
    }
    terms[key] = coeff.str();
  }
  return json{{"nvars", p.nvars()}, {"degree", p.degree()},
              {"terms", std::move(terms)}};
}

json subspace_to_json(const Subspace& s) {
  return matrix_to_json(s.basis_columns());
}

InputDocument parse_input(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("input is not valid JSON: ") + e.what());
  }
  return parse_input(doc);
}

InputDocument parse_input(const json& doc) {
  if (!doc.is_object()) throw ParseError("input document must be an object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_integer())
    throw ParseError("input document needs an integer \"dim\"");
  std::size_t dim = doc.at("dim").get<std::size_t>();
  if (dim != 5 && dim != 6)
    throw BadDimension("dim must be 5 or 6, got " + std::to_string(dim));
  FieldPtr f = parse_field_descriptor(doc.value("field", std::string("q")));
  if (!doc.contains("generators") || !doc.at("generators").is_array())
    throw ParseError("input document needs a \"generators\" array");
  const json& gens = doc.at("generators");
  if (gens.empty() || gens.size() > 4)
    throw BadDimension("generator count must be 1..4, got " +
                       std::to_string(gens.size()));
  std::vector<SkewTensor> tensors;
  for (std::size_t i = 0; i < gens.size(); ++i)
    tensors.push_back(generator_from_json(
        gens.at(i), f, dim, "generators[" + std::to_string(i) + "]"));
  InputDocument out{MatrixSubspace(dim, std::move(tensors))};
  if (doc.contains("metadata")) out.metadata = doc.at("metadata");
  return out;
}

json emit_input(const InputDocument& doc) {
  json gens = json::array();
  for (const auto& g : doc.space.generators())
    gens.push_back(tensor_to_json(g));
  json out{{"dim", doc.space.dim()},
           {"field", field_descriptor(doc.space.field())},
           {"generators", std::move(gens)}};
  if (!doc.metadata.is_null() &&
      !(doc.metadata.is_object() && doc.metadata.empty()))
    out["metadata"] = doc.metadata;
  return out;
}

std::string input_hash(const json& canonical) {
  const std::string bytes = canonical.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

ReportDocument run_command(const std::string& command, const json& input,
                           const CommandOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<InputDocument> echo;
  json result = dispatch(command, input, options, echo);
  if (command == "gen") return {result, 0};  // a document, piped onward as-is

  json body{{"schema", kSchemaVersion}, {"command", command}};
  if (echo) {
    json canonical = emit_input(*echo);
    body["input_hash"] = input_hash(canonical);
    body["input"] = std::move(canonical);
  } else {
    body["input_hash"] = input_hash(input);
  }
  if (options.seed != 0) body["seed"] = options.seed;
  body["result"] = std::move(result);
  body["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return {std::move(body), 0};
}

std::string render_text(const json& doc) {
  std::ostringstream os;
  json stripped = doc;
  if (stripped.is_object() && stripped.contains("input"))
    stripped.erase("input");  // echoed structure is JSON-only detail
  render_value(stripped, "", os);
  return os.str();
}

}  // namespace skewrank

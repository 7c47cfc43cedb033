#include "descentkit/io.hpp"

#include <fstream>
#include <sstream>

namespace descentkit {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(Errc::parse_error, msg); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t need_size(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

long long need_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long long>();
}

Vec vec_from_json(FieldDescriptor f, const Json& j, std::size_t len, const char* what) {
  if (!j.is_array() || j.size() != len)
    bad(std::string(what) + " must be an array of length " + std::to_string(len));
  Vec v;
  v.reserve(len);
  for (const Json& e : j) v.push_back(scalar_from_json(f, e));
  return v;
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const Scalar& s : v) out.push_back(scalar_to_json(s));
  return out;
}

Degree degree_from_json(const Json& j, std::size_t len) {
  if (!j.is_array() || j.size() != len)
    bad("degree must be an array of length " + std::to_string(len));
  Degree d;
  for (const Json& e : j) d.push_back(need_int(e, "degree entry"));
  return d;
}

Json degree_to_json(const Degree& d) {
  Json out = Json::array();
  for (long long v : d) out.push_back(v);
  return out;
}

// matrices travel row-major, either flat or as nested rows
Matrix matrix_from_json(FieldDescriptor f, const Json& j, std::size_t rows, std::size_t cols,
                        const char* what) {
  Matrix m(f, rows, cols);
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  if (j.size() == rows && (rows == 0 || j.at(0).is_array())) {
    for (std::size_t r = 0; r < rows; ++r) {
      const Json& row = j.at(r);
      if (!row.is_array() || row.size() != cols) bad(std::string(what) + " row has the wrong length");
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = scalar_from_json(f, row.at(c));
    }
    return m;
  }
  if (j.size() != rows * cols)
    bad(std::string(what) + " must hold " + std::to_string(rows * cols) + " entries");
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = scalar_from_json(f, j.at(r * cols + c));
  return m;
}

Json matrix_to_json_nested(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json matrix_to_json_flat(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(scalar_to_json(m.at(r, c)));
  return out;
}

}  // namespace

Json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(FieldDescriptor f, const Json& j) {
  if (j.is_string()) return parse_scalar(f, j.get<std::string>());
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<long long>());
  bad("field element must be a string or integer");
}

Json field_to_json(const FieldDescriptor& f) {
  Json out;
  if (f.kind == FieldKind::prime) {
    out["kind"] = "prime";
    out["p"] = f.p;
  } else {
    out["kind"] = "rational";
  }
  return out;
}

FieldDescriptor field_from_json(const Json& j) {
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "prime") return make_prime_field(need_size(need(j, "p"), "modulus"));
  if (kind == "rational") return make_rational_field();
  bad("unknown field kind '" + kind + "'");
}

Json algebra_to_json(const Algebra& a) {
  Json out;
  out["field"] = field_to_json(a.field());
  out["dim"] = a.dim();
  out["basis"] = a.labels();
  out["unit"] = vec_to_json(a.unit());
  Json mul = Json::array();
  for (const MulTriple& t : a.mul_triples())
    mul.push_back(Json::array({t.i, t.j, t.k, scalar_to_json(t.c)}));
  out["mul"] = std::move(mul);
  if (a.augmentation()) out["augmentation"] = vec_to_json(*a.augmentation());
  if (a.grading()) {
    Json g;
    g["signature"] = Json{{"z", a.grading()->signature.z_count}, {"n", a.grading()->signature.n_count}};
    Json degs = Json::array();
    for (const Degree& d : a.grading()->degrees) degs.push_back(degree_to_json(d));
    g["degrees"] = std::move(degs);
    out["grading"] = std::move(g);
  }
  return out;
}

AlgebraPtr algebra_from_json(const Json& j) {
  FieldDescriptor f = field_from_json(need(j, "field"));
  std::size_t dim = need_size(need(j, "dim"), "dim");
  std::vector<std::string> labels;
  if (j.contains("basis")) {
    const Json& b = j.at("basis");
    if (!b.is_array() || b.size() != dim) bad("basis must list one label per dimension");
    for (const Json& e : b) {
      if (!e.is_string()) bad("basis labels must be strings");
      labels.push_back(e.get<std::string>());
    }
  }
  Vec unit = vec_from_json(f, need(j, "unit"), dim, "unit");
  const Json& mj = need(j, "mul");
  if (!mj.is_array()) bad("mul must be an array of [i, j, k, c] entries");
  std::vector<MulTriple> mul;
  for (const Json& e : mj) {
    if (!e.is_array() || e.size() != 4) bad("mul entries must be [i, j, k, c]");
    std::size_t i = need_size(e.at(0), "mul index"), jj = need_size(e.at(1), "mul index"),
                k = need_size(e.at(2), "mul index");
    if (i >= dim || jj >= dim || k >= dim) bad("mul index out of range");
    mul.push_back({i, jj, k, scalar_from_json(f, e.at(3))});
  }
  std::optional<Vec> aug;
  if (j.contains("augmentation")) aug = vec_from_json(f, j.at("augmentation"), dim, "augmentation");
  std::optional<AlgebraGrading> grading;
  if (j.contains("grading")) {
    const Json& g = j.at("grading");
    AlgebraGrading ag;
    const Json& sig = need(g, "signature");
    ag.signature.z_count = need_size(need(sig, "z"), "signature z");
    ag.signature.n_count = need_size(need(sig, "n"), "signature n");
    const Json& degs = need(g, "degrees");
    if (!degs.is_array() || degs.size() != dim) bad("grading must list one degree per basis element");
    for (const Json& d : degs) ag.degrees.push_back(degree_from_json(d, ag.signature.length()));
    grading = std::move(ag);
  }
  return make_algebra(f, dim, std::move(labels), std::move(mul), std::move(unit), std::move(aug),
                      std::move(grading));
}

AlgebraPtr resolve_algebra(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_string()) {
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = base / p;
    return load_algebra(p.string());
  }
  if (ref.is_object()) return algebra_from_json(ref);
  bad("algebra reference must be a path or an inline object");
}

Json module_to_json(const Module& m, const std::optional<std::string>& algebra_ref) {
  Json out;
  if (algebra_ref)
    out["algebra"] = *algebra_ref;
  else
    out["algebra"] = algebra_to_json(*m.algebra());
  out["dim"] = m.dim();
  Json acts = Json::array();
  for (const Matrix& a : m.actions()) acts.push_back(matrix_to_json_flat(a));
  out["action"] = std::move(acts);
  if (m.grading()) {
    Json g = Json::array();
    for (const Degree& d : *m.grading()) g.push_back(degree_to_json(d));
    out["grading"] = std::move(g);
  }
  return out;
}

Module module_from_json(const Json& j, const std::filesystem::path& base) {
  AlgebraPtr a = resolve_algebra(need(j, "algebra"), base);
  FieldDescriptor f = a->field();
  std::size_t dim = need_size(need(j, "dim"), "dim");
  const Json& acts = need(j, "action");
  if (!acts.is_array() || acts.size() != a->dim())
    bad("action must hold one matrix per algebra basis element");
  std::vector<Matrix> action;
  for (const Json& e : acts) action.push_back(matrix_from_json(f, e, dim, dim, "action matrix"));
  std::optional<std::vector<Degree>> grading;
  if (j.contains("grading")) {
    const Json& g = j.at("grading");
    if (!g.is_array() || g.size() != dim) bad("grading must list one degree per module basis vector");
    std::size_t len = a->is_graded() ? a->grading()->signature.length()
                                     : (g.empty() || !g.at(0).is_array() ? 0 : g.at(0).size());
    std::vector<Degree> degs;
    for (const Json& d : g) degs.push_back(degree_from_json(d, len));
    grading = std::move(degs);
  }
  return Module(a, dim, std::move(action), std::move(grading));
}

Json map_to_json(const AlgebraMap& f, const std::optional<std::string>& source_ref,
                 const std::optional<std::string>& target_ref) {
  Json out;
  if (source_ref)
    out["source"] = *source_ref;
  else
    out["source"] = algebra_to_json(*f.source);
  if (target_ref)
    out["target"] = *target_ref;
  else
    out["target"] = algebra_to_json(*f.target);
  out["matrix"] = matrix_to_json_nested(f.matrix);
  return out;
}

AlgebraMap map_from_json(const Json& j, const std::filesystem::path& base) {
  AlgebraPtr src = resolve_algebra(need(j, "source"), base);
  AlgebraPtr tgt = resolve_algebra(need(j, "target"), base);
  Matrix m = matrix_from_json(tgt->field(), need(j, "matrix"), tgt->dim(), src->dim(), "matrix");
  if (src->field() != tgt->field()) fail(Errc::field_mismatch, "map endpoints use different fields");
  return AlgebraMap{std::move(src), std::move(tgt), std::move(m)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write '" + path + "'");
  out << text;
  if (!out) bad("write failed for '" + path + "'");
}

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON");
  return j;
}

void save_json(const Json& j, const std::string& path) { write_text_file(path, j.dump(2) + "\n"); }

AlgebraPtr load_algebra(const std::string& path) {
  return algebra_from_json(parse_json_text(read_text_file(path)));
}

Module load_module(const std::string& path) {
  return module_from_json(parse_json_text(read_text_file(path)),
                          std::filesystem::path(path).parent_path());
}

AlgebraMap load_map(const std::string& path) {
  return map_from_json(parse_json_text(read_text_file(path)),
                       std::filesystem::path(path).parent_path());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string file_digest(const std::string& path) { return fnv1a_hex(read_text_file(path)); }

JsonKind sniff_kind(const Json& j) {
  if (!j.is_object()) bad("expected a JSON object");
  if (j.contains("mul")) return JsonKind::algebra;
  if (j.contains("action")) return JsonKind::module;
  if (j.contains("matrix")) return JsonKind::map;
  bad("object is not an algebra, module or map");
}

}  // namespace descentkit

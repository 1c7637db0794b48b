#include "qfan/fan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qfan/errors.hpp"

namespace qfan {

IndexSet sorted_set(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

static std::string index_set_str(const IndexSet& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << (s[i] + 1);
  os << "}";
  return os.str();
}

bool Calibration::is_virtual(int j) const {
  return std::binary_search(virtuals.begin(), virtuals.end(), j);
}

bool Calibration::standard_prefix() const {
  if (n() < d()) return false;
  for (int i = 0; i < d(); ++i)
    for (int j = 0; j < d(); ++j) {
      const Scalar& v = columns.at(j, i);
      if (i == j ? v != field()->one() : !v.is_zero()) return false;
    }
  return true;
}

bool Calibration::virtual_tail() const {
  int k = static_cast<int>(virtuals.size());
  for (int i = 0; i < k; ++i)
    if (virtuals[static_cast<std::size_t>(i)] != n() - k + i) return false;
  return true;
}

int Calibration::nonvirtual_rank() const {
  std::vector<Vec> cols;
  for (int j = 0; j < n(); ++j)
    if (!is_virtual(j)) cols.push_back(column(j));
  if (cols.empty()) return 0;
  return ExactMatrix::from_columns(cols).rank();
}

ValidationReport Calibration::validate() const {
  ValidationReport r;
  for (int j : virtuals)
    if (j < 0 || j >= n()) r.add("VirtualIndexOutOfRange", "virtual index " + std::to_string(j + 1));
  if (nonvirtual_rank() != d())
    r.add("NonVirtualColumnsDoNotSpan",
          "columns outside the virtual set have rank " + std::to_string(nonvirtual_rank()) +
              " < d = " + std::to_string(d()));
  if (!standard_prefix())
    r.note("NonStandardPrefix", "columns 1..d are not the standard basis");
  if (!virtual_tail())
    r.note("VirtualSetNotTail", "virtual indices are not a tail segment");
  return r;
}

ConeGeom cone_geom(const Calibration& cal, const IndexSet& gens) {
  std::vector<Vec> vecs;
  for (int j : gens) {
    if (j < 0 || j >= cal.n())
      fail(ErrorCode::DimensionMismatch, "generator index out of range: " + std::to_string(j + 1));
    vecs.push_back(cal.column(j));
  }
  return ConeGeom::from_generators(vecs, cal.d(), cal.field());
}

namespace {

// Face generator-index subsets of the cone over gens (each sorted).
std::vector<IndexSet> face_gen_subsets(const Calibration& cal, const IndexSet& gens,
                                       const ConeGeom& geom) {
  std::vector<IndexSet> out;
  IndexSet sorted_gens = sorted_set(gens);
  if (geom.is_simplicial() &&
      static_cast<int>(sorted_gens.size()) == static_cast<int>(geom.extreme_rays().size())) {
    // subset lattice
    std::size_t k = sorted_gens.size();
    for (std::size_t mask = 0; mask < (1ULL << k); ++mask) {
      IndexSet f;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1ULL << b)) f.push_back(sorted_gens[b]);
      out.push_back(std::move(f));
    }
    return out;
  }
  for (const auto& rayset : geom.face_ray_subsets()) {
    std::vector<Vec> rays;
    for (int i : rayset) rays.push_back(geom.extreme_rays()[static_cast<std::size_t>(i)]);
    ConeGeom fgeom = ConeGeom::from_generators(rays, geom.ambient_dim(), geom.field());
    IndexSet f;
    for (int j : sorted_gens)
      if (fgeom.contains(cal.column(j))) f.push_back(j);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<IndexSet> face_lattice(const Calibration& cal, const IndexSet& gens) {
  ConeGeom geom = cone_geom(cal, gens);
  auto faces = face_gen_subsets(cal, gens, geom);
  std::sort(faces.begin(), faces.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return faces;
}

QuantumFan::QuantumFan(Calibration cal, std::vector<IndexSet> max_cones,
                       std::vector<int> generator_set)
    : cal_(std::move(cal)), max_cones_(std::move(max_cones)),
      generators_(sorted_set(std::move(generator_set))) {
  std::set<IndexSet> seen;
  for (const auto& c : max_cones_) {
    auto geom = std::make_shared<ConeGeom>(cone_geom(cal_, c));
    max_geoms_.push_back(geom);
    geom_by_cone_.emplace(sorted_set(c), geom);
  }
  // all faces
  std::set<IndexSet> cones;
  for (std::size_t i = 0; i < max_cones_.size(); ++i) {
    for (auto& f : face_gen_subsets(cal_, max_cones_[i], *max_geoms_[i])) cones.insert(f);
  }
  if (max_cones_.empty()) cones.insert({});
  all_cones_.assign(cones.begin(), cones.end());
  std::sort(all_cones_.begin(), all_cones_.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (const auto& c : all_cones_)
    if (!geom_by_cone_.count(c))
      geom_by_cone_.emplace(c, std::make_shared<ConeGeom>(cone_geom(cal_, c)));
}

const ConeGeom& QuantumFan::geom_of(const IndexSet& sorted_gens) const {
  auto it = geom_by_cone_.find(sorted_gens);
  if (it == geom_by_cone_.end())
    fail(ErrorCode::NotValid, "no such cone in fan: " + index_set_str(sorted_gens));
  return *it->second;
}

bool QuantumFan::has_cone(const IndexSet& sorted_gens) const {
  return std::binary_search(all_cones_.begin(), all_cones_.end(), sorted_gens,
                            [](const IndexSet& a, const IndexSet& b) {
                              if (a.size() != b.size()) return a.size() < b.size();
                              return a < b;
                            });
}

std::vector<int> QuantumFan::ray_indices() const {
  std::set<int> rays;
  for (const auto& c : all_cones_)
    if (c.size() == 1) rays.insert(c[0]);
  return {rays.begin(), rays.end()};
}

bool QuantumFan::is_simplicial() const {
  for (const auto& g : max_geoms_)
    if (!g->is_simplicial()) return false;
  return true;
}

bool QuantumFan::is_complete() const {
  if (max_cones_.empty()) return false;
  const int d = dim();
  for (const auto& g : max_geoms_)
    if (g->dim() != d) return false;
  // every ridge (face of dimension d-1) lies in exactly two maximal cones
  std::map<IndexSet, int> ridge_count;
  for (std::size_t i = 0; i < max_cones_.size(); ++i) {
    auto faces = face_gen_subsets(cal_, max_cones_[i], *max_geoms_[i]);
    std::set<IndexSet> ridges;
    for (const auto& f : faces)
      if (geom_by_cone_.count(f) && geom_by_cone_.at(f)->dim() == d - 1) ridges.insert(f);
    for (const auto& r : ridges) ridge_count[r]++;
  }
  for (const auto& [ridge, count] : ridge_count) {
    (void)ridge;
    if (count != 2) return false;
  }
  return !ridge_count.empty() || d == 0;
}

std::optional<IndexSet> QuantumFan::find_cone_matching(const ConeGeom& g) const {
  for (const auto& c : all_cones_)
    if (geom_of(c).equals(g)) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

ValidationReport validate_fan(const QuantumFan& fan) {
  ValidationReport r = fan.cal().validate();
  const Calibration& cal = fan.cal();

  std::set<IndexSet> seen;
  for (const auto& c : fan.max_cones()) {
    IndexSet s = sorted_set(c);
    if (s.size() != c.size())
      r.add("DuplicateGenerator", "cone " + index_set_str(c) + " repeats an index");
    if (!seen.insert(s).second)
      r.note("DuplicateCone", "cone " + index_set_str(c) + " listed twice");
    for (int j : c) {
      if (cal.is_virtual(j))
        r.add("VirtualGeneratorInCone",
              "cone " + index_set_str(c) + " uses virtual generator " + std::to_string(j + 1));
      if (vec_is_zero(cal.column(j)))
        r.add("ZeroGenerator", "generator " + std::to_string(j + 1) + " is the zero vector");
    }
  }

  // strong convexity
  for (std::size_t i = 0; i < fan.max_cones().size(); ++i)
    if (!fan.max_cone_geom(i).is_pointed())
      r.add("StrongConvexityViolated",
            "cone " + index_set_str(fan.max_cones()[i]) + " contains a line");
  if (!r.ok()) return r;  // geometry below assumes pointed cones

  // maximality: no listed maximal cone inside another
  for (std::size_t i = 0; i < fan.max_cones().size(); ++i)
    for (std::size_t j = 0; j < fan.max_cones().size(); ++j) {
      if (i == j) continue;
      if (sorted_set(fan.max_cones()[i]) == sorted_set(fan.max_cones()[j]) && i > j) continue;
      if (fan.max_cone_geom(j).contains_cone(fan.max_cone_geom(i)) &&
          !fan.max_cone_geom(i).equals(fan.max_cone_geom(j)))
        r.note("NonMaximalCone", "cone " + index_set_str(fan.max_cones()[i]) +
                                     " is contained in " + index_set_str(fan.max_cones()[j]));
    }

  // intersection closure and the face condition, pairwise over maximal cones
  for (std::size_t i = 0; i < fan.max_cones().size(); ++i)
    for (std::size_t j = i + 1; j < fan.max_cones().size(); ++j) {
      ConeGeom inter = fan.max_cone_geom(i).intersect(fan.max_cone_geom(j));
      auto found = fan.find_cone_matching(inter);
      if (!found) {
        r.add("IntersectionClosureViolated",
              "intersection of " + index_set_str(fan.max_cones()[i]) + " and " +
                  index_set_str(fan.max_cones()[j]) + " is not a cone of the fan");
        continue;
      }
      // face condition (the classical fan axiom, checked separately)
      for (std::size_t side : {i, j}) {
        bool is_face = false;
        for (const auto& f : face_lattice(cal, fan.max_cones()[side]))
          if (fan.geom_of(f).equals(inter)) {
            is_face = true;
            break;
          }
        if (!is_face)
          r.add("IntersectionNotFace",
                "intersection of " + index_set_str(fan.max_cones()[i]) + " and " +
                    index_set_str(fan.max_cones()[j]) + " is not a face of " +
                    index_set_str(fan.max_cones()[side]));
      }
    }

  // 1-cones are exactly the rays of the generator set A
  {
    auto rays = fan.ray_indices();
    std::set<int> rayset(rays.begin(), rays.end());
    std::set<int> genset(fan.generators().begin(), fan.generators().end());
    for (int i : rayset)
      if (!genset.count(i))
        r.add("RayNotInGeneratorSet",
              "ray generator " + std::to_string(i + 1) + " is not in the generator set A");
    for (int i : genset) {
      if (rayset.count(i)) continue;
      // also accept i if its column spans the same ray as a listed 1-cone
      bool matched = false;
      for (int rj : rayset)
        if (vec_positive_multiple(cal.column(i), cal.column(rj))) matched = true;
      if (!matched)
        r.add("GeneratorNotARay",
              "generator " + std::to_string(i + 1) + " spans no 1-cone of the fan");
      else
        r.note("DuplicateRayGenerator",
               "generator " + std::to_string(i + 1) + " spans an already-listed ray");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

int angular_compare(const Vec& a, const Vec& b) {
  auto octant = [](const Vec& v) {
    int sx = v[0].sign(), sy = v[1].sign();
    if (sy == 0 && sx > 0) return 0;
    if (sy > 0 && sx > 0) return 1;
    if (sx == 0 && sy > 0) return 2;
    if (sx < 0 && sy > 0) return 3;
    if (sy == 0 && sx < 0) return 4;
    if (sx < 0 && sy < 0) return 5;
    if (sx == 0 && sy < 0) return 6;
    return 7;
  };
  int qa = octant(a), qb = octant(b);
  if (qa != qb) return qa < qb ? -1 : 1;
  Scalar cross = a[0] * b[1] - a[1] * b[0];
  return -cross.sign();  // cross > 0 means a strictly before b
}

namespace {

struct Support2D {
  bool full_plane = false;
  // maximal arcs as (start, end) canonical ray pairs, counterclockwise
  std::vector<std::pair<Vec, Vec>> arcs;
  std::vector<Vec> isolated_rays;  // canonical
};

Support2D support_2d(const QuantumFan& fan) {
  Support2D s;
  std::vector<std::pair<Vec, Vec>> sectors;  // (start, end), ccw
  std::vector<Vec> rays_in_2cones;
  for (std::size_t i = 0; i < fan.max_cones().size(); ++i) {
    const ConeGeom& g = fan.max_cone_geom(i);
    if (g.dim() == 2) {
      Vec u = g.extreme_rays()[0], w = g.extreme_rays()[1];
      Scalar cross = u[0] * w[1] - u[1] * w[0];
      if (cross.sign() < 0) std::swap(u, w);
      sectors.emplace_back(u, w);
      rays_in_2cones.push_back(u);
      rays_in_2cones.push_back(w);
    }
  }
  // isolated rays: 1-cones not a face of any 2-cone
  for (const auto& c : fan.cones()) {
    if (fan.geom_of(c).dim() != 1) continue;
    Vec ray = fan.geom_of(c).extreme_rays()[0];
    bool covered = false;
    for (const auto& r2 : rays_in_2cones)
      if (vec_lex_compare(ray, r2) == 0) covered = true;
    if (!covered) s.isolated_rays.push_back(ray);
  }
  std::sort(s.isolated_rays.begin(), s.isolated_rays.end(),
            [](const Vec& a, const Vec& b) { return vec_lex_compare(a, b) < 0; });
  if (sectors.empty()) return s;

  std::sort(sectors.begin(), sectors.end(), [](const auto& a, const auto& b) {
    return angular_compare(a.first, b.first) < 0;
  });
  // merge consecutive sectors sharing a boundary ray
  std::vector<std::pair<Vec, Vec>> merged;
  for (auto& sec : sectors) {
    if (!merged.empty() && vec_lex_compare(merged.back().second, sec.first) == 0)
      merged.back().second = sec.second;
    else
      merged.push_back(sec);
  }
  // wraparound merge
  if (merged.size() > 1 && vec_lex_compare(merged.back().second, merged.front().first) == 0) {
    merged.front().first = merged.back().first;
    merged.pop_back();
  }
  if (merged.size() == 1 && vec_lex_compare(merged[0].first, merged[0].second) == 0) {
    s.full_plane = true;
    return s;
  }
  s.arcs = std::move(merged);
  std::sort(s.arcs.begin(), s.arcs.end(), [](const auto& a, const auto& b) {
    return vec_lex_compare(a.first, b.first) < 0;
  });
  return s;
}

}  // namespace

bool support_equal(const QuantumFan& a, const QuantumFan& b) {
  if (a.dim() != b.dim())
    fail(ErrorCode::DimensionMismatch, "support comparison across ambient dimensions");
  if (a.dim() == 2) {
    Support2D sa = support_2d(a), sb = support_2d(b);
    if (sa.full_plane != sb.full_plane) return false;
    if (sa.arcs.size() != sb.arcs.size() || sa.isolated_rays.size() != sb.isolated_rays.size())
      return false;
    for (std::size_t i = 0; i < sa.arcs.size(); ++i)
      if (vec_lex_compare(sa.arcs[i].first, sb.arcs[i].first) != 0 ||
          vec_lex_compare(sa.arcs[i].second, sb.arcs[i].second) != 0)
        return false;
    for (std::size_t i = 0; i < sa.isolated_rays.size(); ++i)
      if (vec_lex_compare(sa.isolated_rays[i], sb.isolated_rays[i]) != 0) return false;
    return true;
  }
  bool ca = a.is_complete(), cb = b.is_complete();
  if (ca && cb) return true;
  if (ca != cb) return false;
  fail(ErrorCode::UnsupportedDimension,
       "support equality is decided only for d = 2 or complete fans");
}

}  // namespace qfan

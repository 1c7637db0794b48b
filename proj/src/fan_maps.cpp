#include "qfan/fan_maps.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qfan/errors.hpp"

namespace qfan {

namespace {

std::string iset_str(const IndexSet& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << (s[i] + 1);
  os << "}";
  return os.str();
}

std::vector<Vec> image_of_gens(const ExactMatrix& L, const Calibration& cal, const IndexSet& gens) {
  std::vector<Vec> out;
  for (int j : gens) out.push_back(L.apply(cal.column(j)));
  return out;
}

}  // namespace

bool same_fan(const QuantumFan& a, const QuantumFan& b) {
  if (!(a.cal().columns == b.cal().columns)) return false;
  if (a.cal().virtuals != b.cal().virtuals) return false;
  if (a.generators() != b.generators()) return false;
  std::vector<IndexSet> ca, cb;
  for (const auto& c : a.max_cones()) ca.push_back(sorted_set(c));
  for (const auto& c : b.max_cones()) cb.push_back(sorted_set(c));
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

ValidationReport validate_morphism(const FanMorphism& m) {
  ValidationReport r;
  const Calibration& hs = m.source.cal();
  const Calibration& ht = m.target.cal();
  if (m.L.rows() != ht.d() || m.L.cols() != hs.d() || m.H.rows() != ht.n() ||
      m.H.cols() != hs.n()) {
    r.add("ShapeMismatch", "L must be d'xd and H must be n'xn");
    return r;
  }

  // commuting square h' H = L h, exact, column by column
  ExactMatrix lhs = ht.columns * m.H;
  ExactMatrix rhs = m.L * hs.columns;
  for (int j = 0; j < hs.n(); ++j)
    for (int i = 0; i < ht.d(); ++i)
      if (lhs.at(i, j) != rhs.at(i, j)) {
        r.add("DiagramNotCommuting",
              "h'H and Lh differ at column " + std::to_string(j + 1));
        i = ht.d();
        j = hs.n();
      }

  if (!m.H.all_integer()) r.add("HNotIntegral", "H has a non-integer entry");

  // cone mapping: every cone of the source lands inside some target cone
  for (std::size_t i = 0; i < m.source.max_cones().size(); ++i) {
    auto imgs = image_of_gens(m.L, hs, m.source.max_cones()[i]);
    bool contained = false;
    for (std::size_t j = 0; j < m.target.max_cones().size() && !contained; ++j) {
      const ConeGeom& tg = m.target.max_cone_geom(j);
      bool all_in = true;
      for (const auto& v : imgs)
        if (!tg.contains(v)) {
          all_in = false;
          break;
        }
      contained = all_in;
    }
    if (!contained)
      r.add("ConeNotMapped", "image of cone " + iset_str(m.source.max_cones()[i]) +
                                 " is contained in no target cone");
  }

  // virtual respect: H maps Z^I into Z^I' (interpretation of the virtual
  // generator condition; reported as such)
  for (int i : hs.virtuals)
    for (int j = 0; j < ht.n(); ++j)
      if (!m.H.at(j, i).is_zero() && !ht.is_virtual(j))
        r.add("VirtualLeak", "H sends virtual generator " + std::to_string(i + 1) +
                                 " onto non-virtual coordinate " + std::to_string(j + 1));
  r.note("VirtualRespectInterpretation",
         "virtual respect is checked as H(Z^I) within Z^I'");
  return r;
}

MonomialMap monomial_compose(const MonomialMap& outer, const MonomialMap& inner) {
  return MonomialMap{outer.exponents * inner.exponents};
}

MonomialMap local_monomial(const FanMorphism& m, const IndexSet& sigma,
                           const IndexSet& sigma_prime) {
  const Calibration& hs = m.source.cal();
  const Calibration& ht = m.target.cal();
  if (static_cast<int>(sigma.size()) != hs.d() ||
      static_cast<int>(sigma_prime.size()) != ht.d())
    fail(ErrorCode::DimensionMismatch, "local chart needs maximal simplicial cones");
  std::vector<Vec> gs, gt;
  for (int j : sigma) gs.push_back(hs.column(j));
  for (int j : sigma_prime) gt.push_back(ht.column(j));
  ExactMatrix G = ExactMatrix::from_columns(gs);
  ExactMatrix Gp = ExactMatrix::from_columns(gt);
  ConeGeom target_cone = ConeGeom::from_generators(gt, ht.d(), ht.field());
  for (const auto& g : gs)
    if (!target_cone.contains(m.L.apply(g)))
      fail(ErrorCode::NotContained, "L does not map the chart cone into the target cone");
  ExactMatrix A = Gp.inverse() * m.L * G;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      const Scalar& a = A.at(i, j);
      if (!a.is_integer() || a.sign() < 0)
        fail(ErrorCode::NonIntegral, "exponent entry (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ") = " + a.to_string() +
                                         " is not a nonnegative integer");
    }
  return MonomialMap{A};
}

ExactMatrix gale_transform(const Calibration& cal) {
  if (cal.columns.rank() != cal.d())
    fail(ErrorCode::NotValid, "calibration columns do not have rank d");
  auto basis = cal.columns.kernel_basis();
  if (basis.empty()) return ExactMatrix(cal.n(), 0, cal.field());
  return ExactMatrix::from_columns(basis);
}

CoordinatePattern s_delta_pattern(const QuantumFan& fan, const IndexSet& cone) {
  CoordinatePattern p;
  const ConeGeom& g = fan.geom_of(sorted_set(cone));
  for (int i : fan.ray_indices())
    if (g.contains(fan.cal().column(i))) p.zero_allowed.push_back(i);
  std::set<int> za(p.zero_allowed.begin(), p.zero_allowed.end());
  for (int j = 0; j < fan.cal().n(); ++j)
    if (!za.count(j)) p.nonzero_required.push_back(j);
  return p;
}

std::vector<CoordinatePattern> s_delta(const QuantumFan& fan) {
  std::vector<CoordinatePattern> out;
  for (const auto& c : fan.max_cones()) out.push_back(s_delta_pattern(fan, c));
  return out;
}

// ---------------------------------------------------------------------------

BirationalValidation validate_birational(const BirationalFanMorphism& b) {
  BirationalValidation out;
  ValidationReport& r = out.report;
  const Calibration& hs = b.source.cal();
  const Calibration& ht = b.target.cal();
  if (hs.d() != ht.d()) {
    r.add("ShapeMismatch", "birational morphisms need equal ambient dimensions");
    return out;
  }
  if (b.L.rows() != hs.d() || b.L.cols() != hs.d() || b.H.rows() != ht.n() ||
      b.H.cols() != hs.n() || hs.n() != ht.n()) {
    r.add("ShapeMismatch", "L must be dxd and H nxn");
    return out;
  }
  ExactMatrix Linv(0, 0, hs.field()), Hinv(0, 0, hs.field());
  try {
    Linv = b.L.inverse();
    Hinv = b.H.inverse();
  } catch (const Error&) {
    r.add("NotInvertible", "L and H must both be invertible");
    return out;
  }

  ExactMatrix lhs = ht.columns * b.H;
  ExactMatrix rhs = b.L * hs.columns;
  if (!(lhs == rhs)) {
    r.add("DiagramNotCommuting", "h'H != Lh");
    return out;
  }

  // maximal witness: cones whose L-image is exactly a cone of the target
  for (const auto& c : b.source.cones()) {
    auto imgs = image_of_gens(b.L, hs, c);
    ConeGeom img = ConeGeom::from_generators(imgs, ht.d(), ht.field());
    auto match = b.target.find_cone_matching(img);
    if (match) {
      out.witness.source_cones.push_back(c);
      out.witness.target_cones.push_back(*match);
    }
  }
  if (out.witness.source_cones.empty()) {
    r.add("EmptyWitness", "no cone of the source maps onto a cone of the target");
    return out;
  }

  // exceptional rays on both sides
  std::set<int> wit_src_rays, wit_tgt_rays;
  for (const auto& c : out.witness.source_cones)
    if (c.size() == 1) wit_src_rays.insert(c[0]);
  for (const auto& c : out.witness.target_cones)
    if (c.size() == 1) wit_tgt_rays.insert(c[0]);
  for (int i : b.source.ray_indices())
    if (!wit_src_rays.count(i)) out.witness.exceptional_source.push_back(i);
  for (int i : b.target.ray_indices())
    if (!wit_tgt_rays.count(i)) out.witness.exceptional_target.push_back(i);

  // virtual transport closure: find minimal J, J' with
  // H(Z^{I u exceptional u J}) = Z^{I' u exceptional' u J'}
  std::set<int> vsrc(hs.virtuals.begin(), hs.virtuals.end());
  for (int i : out.witness.exceptional_source) vsrc.insert(i);
  std::set<int> vtgt(ht.virtuals.begin(), ht.virtuals.end());
  for (int i : out.witness.exceptional_target) vtgt.insert(i);
  auto src_rays_vec = b.source.ray_indices();
  auto tgt_rays_vec = b.target.ray_indices();
  std::set<int> src_rays_all(src_rays_vec.begin(), src_rays_vec.end());
  std::set<int> tgt_rays_all(tgt_rays_vec.begin(), tgt_rays_vec.end());
  std::set<int> J, Jp;
  bool changed = true;
  while (changed && r.ok()) {
    changed = false;
    auto sweep = [&](const ExactMatrix& M, const std::set<int>& from_virt, std::set<int>& to_virt,
                     std::set<int>& to_extra, const std::set<int>& to_rays,
                     const std::set<int>& to_wit_rays, const char* dir) {
      for (int i : from_virt)
        for (int j = 0; j < M.rows(); ++j) {
          if (M.at(j, i).is_zero() || to_virt.count(j)) continue;
          if (to_wit_rays.count(j)) {
            r.add("VirtualTransportLeak",
                  std::string("H") + dir + " sends a virtualized generator onto witness ray " +
                      std::to_string(j + 1));
            return;
          }
          if (to_rays.count(j)) {
            // ray outside the witness: already counted exceptional
            continue;
          }
          to_virt.insert(j);
          to_extra.insert(j);
          changed = true;
        }
    };
    std::set<int> vsrc_now = vsrc;
    for (int j : J) vsrc_now.insert(j);
    std::set<int> vtgt_now = vtgt;
    for (int j : Jp) vtgt_now.insert(j);
    sweep(b.H, vsrc_now, vtgt_now, Jp, tgt_rays_all, wit_tgt_rays, "");
    if (!r.ok()) break;
    sweep(Hinv, vtgt_now, vsrc_now, J, src_rays_all, wit_src_rays, "^-1");
    vsrc = vsrc_now;
    for (int j : J) vsrc.insert(j);
    vtgt = vtgt_now;
    for (int j : Jp) vtgt.insert(j);
  }
  out.witness.extra_virtual_source.assign(J.begin(), J.end());
  out.witness.extra_virtual_target.assign(Jp.begin(), Jp.end());
  r.note("WitnessMaximal", "witness canonicalized to the maximal common subfan (" +
                               std::to_string(out.witness.source_cones.size()) + " cones)");
  return out;
}

BirationalFanMorphism invert_birational(const BirationalFanMorphism& b) {
  return BirationalFanMorphism{b.target, b.source, b.L.inverse(), b.H.inverse()};
}

BirationalFanMorphism compose_birational(const BirationalFanMorphism& b2,
                                         const BirationalFanMorphism& b1) {
  if (!same_fan(b2.source, b1.target))
    fail(ErrorCode::ChainMismatch, "middle fans of the composition differ");
  return BirationalFanMorphism{b1.source, b2.target, b2.L * b1.L, b2.H * b1.H};
}

}  // namespace qfan

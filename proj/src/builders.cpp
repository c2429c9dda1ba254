#include "gca/builders.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace gca {

GradedSpec build_all_scalar(const Semilattice& L) {
  GradedSpec spec(L, std::vector<AlgebraShape>(L.size(), AlgebraShape::scalars()));
  for (int i = 0; i < L.size(); ++i)
    for (int j = 0; j < L.size(); ++j)
      if (i != j && L.leq(i, j)) spec.set_phi(i, j, StarHom::identity(AlgebraShape::scalars()));
  return spec;
}

namespace {

std::string subgroup_name(const FiniteGroup& g, const IndexSet& h) {
  std::string s = "{";
  for (std::size_t k = 0; k < h.size(); ++k) s += (k ? "," : "") + g.name(h[k]);
  return s + "}";
}

AlgebraShape points(int n) { return AlgebraShape(std::vector<int>(n, 1)); }

int coset_of(const std::vector<IndexSet>& cosets, int x) {
  for (std::size_t c = 0; c < cosets.size(); ++c)
    if (contains(cosets[c], x)) return static_cast<int>(c);
  return -1;
}

}  // namespace

CosetSpec build_coset_spec(const FiniteGroup& g, const std::vector<IndexSet>& subgroups_in) {
  CosetSpec cs;
  for (const auto& h : subgroups_in) {
    const auto s = make_index_set(h);
    if (!g.is_subgroup(s)) fail(ErrorCode::NotASubgroup, subgroup_name(g, s));
    if (std::find(cs.subgroups.begin(), cs.subgroups.end(), s) != cs.subgroups.end()) {
      fail(ErrorCode::NotASubgroup, subgroup_name(g, s) + " listed twice");
    }
    cs.subgroups.push_back(s);
  }
  const int n = static_cast<int>(cs.subgroups.size());
  std::vector<std::vector<int>> meet(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(subgroup_name(g, cs.subgroups[a]));
    for (int b = 0; b < n; ++b) {
      IndexSet both;
      std::set_intersection(cs.subgroups[a].begin(), cs.subgroups[a].end(), cs.subgroups[b].begin(),
                            cs.subgroups[b].end(), std::back_inserter(both));
      const auto it = std::find(cs.subgroups.begin(), cs.subgroups.end(), both);
      if (it == cs.subgroups.end()) {
        fail(ErrorCode::NotIntersectionClosed, subgroup_name(g, cs.subgroups[a]) + " ∩ " +
                                                   subgroup_name(g, cs.subgroups[b]) + " is not in the family");
      }
      meet[a][b] = static_cast<int>(it - cs.subgroups.begin());
    }
  }
  const auto L = Semilattice::from_table(meet, names);

  std::vector<AlgebraShape> comps;
  for (const auto& h : cs.subgroups) {
    cs.cosets.push_back(g.left_cosets(h));
    comps.push_back(points(static_cast<int>(cs.cosets.back().size())));
  }
  GradedSpec spec(L, comps);
  for (int k = 0; k < n; ++k) {
    for (int h = 0; h < n; ++h) {
      if (k == h || !L.leq(k, h)) continue;
      // (f o p)(yK) = f(yH)
      Mat m = Mat::Zero(comps[k].dim(), comps[h].dim());
      for (std::size_t c = 0; c < cs.cosets[k].size(); ++c) m(c, coset_of(cs.cosets[h], cs.cosets[k][c].front())) = 1.0;
      spec.set_phi(k, h, StarHom(comps[h], comps[k], std::move(m)));
    }
  }

  std::vector<std::vector<StarHom>> maps;
  for (int s = 0; s < g.order(); ++s) {
    std::vector<StarHom> row;
    for (int i = 0; i < n; ++i) {
      // delta_{yH} -> delta_{s y H}
      Mat m = Mat::Zero(comps[i].dim(), comps[i].dim());
      for (std::size_t c = 0; c < cs.cosets[i].size(); ++c)
        m(coset_of(cs.cosets[i], g.mul(s, cs.cosets[i][c].front())), c) = 1.0;
      row.emplace_back(comps[i], comps[i], std::move(m));
    }
    maps.push_back(std::move(row));
  }
  cs.spec = spec;
  cs.action = GradedAction{g, std::move(spec), std::move(maps)};
  return cs;
}

GradedMorphism coset_pullback_morphism(const CosetSpec& cs) {
  const auto& g = cs.action.group;
  const auto target = points(g.order());
  std::vector<StarHom> psi;
  for (std::size_t i = 0; i < cs.subgroups.size(); ++i) {
    Mat m = Mat::Zero(g.order(), static_cast<Eigen::Index>(cs.cosets[i].size()));
    for (int x = 0; x < g.order(); ++x) m(x, coset_of(cs.cosets[i], x)) = 1.0;
    psi.emplace_back(cs.spec.component(static_cast<int>(i)), target, std::move(m));
  }
  return build_morphism(cs.spec, target, std::move(psi));
}

GradedAction translation_action(const FiniteGroup& g) {
  IndexSet trivial{g.identity()};
  return build_coset_spec(g, {trivial}).action;
}

GradedSpec m2_chain() {
  GradedSpec spec(Semilattice::chain(2), {AlgebraShape({2}), AlgebraShape::scalars()});
  spec.set_phi(0, 1, StarHom(AlgebraShape::scalars(), AlgebraShape({2}), Mat(Eigen::Vector4cd(1, 0, 0, 1))));
  return spec;
}

GradedSpec mixed_diamond() {
  const auto L = Semilattice::diamond();
  const AlgebraShape m2({2}), c2({1, 1}), c = AlgebraShape::scalars();
  std::map<std::pair<int, int>, StarHom> cover;
  Mat diag = Mat::Zero(4, 2);
  diag(0, 0) = 1.0;
  diag(3, 1) = 1.0;
  cover.emplace(std::make_pair(0, 1), StarHom(c2, m2, diag));
  cover.emplace(std::make_pair(0, 2), StarHom(c, m2, Mat(Eigen::Vector4cd(1, 0, 0, 1))));
  cover.emplace(std::make_pair(1, 3), StarHom(c, c2, Mat(Eigen::Vector2cd(1, 1))));
  cover.emplace(std::make_pair(2, 3), StarHom::identity(c));
  return close_over_chains(L, {m2, c2, c, c}, cover);
}

GradedSpec nonunital_chain() {
  const AlgebraShape c2({1, 1});
  GradedSpec spec(Semilattice::chain(2), {c2, AlgebraShape::scalars()});
  spec.set_phi(0, 1, StarHom(AlgebraShape::scalars(), c2, Mat(Eigen::Vector2cd(1, 0))));
  return spec;
}

GradedSpec axiom_b_violation() {
  const AlgebraShape m2({2}), c = AlgebraShape::scalars();
  GradedSpec spec(Semilattice::chain(3), {m2, c, c});
  spec.set_phi(1, 2, StarHom::identity(c));
  spec.set_phi(0, 1, StarHom(c, m2, Mat(Eigen::Vector4cd(1, 0, 0, 0))));
  spec.set_phi(0, 2, StarHom(c, m2, Mat(Eigen::Vector4cd(0, 0, 0, 1))));
  return spec;
}

std::vector<std::string> demo_names() {
  return {"all-scalar-diamond", "chain-n", "coset-z4", "coset-s3", "m2-chain", "mixed-diamond"};
}

Demo build_demo(const std::string& name) {
  if (name == "all-scalar-diamond") return {build_all_scalar(Semilattice::diamond()), {}, {}};
  if (name.rfind("chain-", 0) == 0) {
    const auto digits = name.substr(6);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() < 4) {
      const int n = std::stoi(digits);
      if (n >= 1) return {build_all_scalar(Semilattice::chain(n)), {}, {}};
    }
  }
  if (name == "coset-z4") {
    const auto g = FiniteGroup::cyclic(4);
    auto cs = build_coset_spec(g, {{0}, {0, 2}, {0, 1, 2, 3}});
    return {cs.spec, g, cs.action};
  }
  if (name == "coset-s3") {
    const auto g = FiniteGroup::symmetric3();
    const int e = g.identity();
    const int t = *g.index_of("(12)");
    const int r = *g.index_of("(123)");
    const int r2 = g.mul(r, r);
    auto cs = build_coset_spec(g, {{e}, {e, t}, {e, r, r2}, {0, 1, 2, 3, 4, 5}});
    return {cs.spec, g, cs.action};
  }
  if (name == "m2-chain") return {m2_chain(), {}, {}};
  if (name == "mixed-diamond") return {mixed_diamond(), {}, {}};
  fail(ErrorCode::ParseError, "unknown demo '" + name + "'");
}

}  // namespace gca

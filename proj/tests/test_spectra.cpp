#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "corpus.hpp"
#include "gca/spectra.hpp"

using namespace gca;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

bool same_set(const std::vector<Character>& a, const std::vector<Character>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    int hits = 0;
    for (const auto& y : b)
      if (character_distance(x, y) <= tol) ++hits;
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace

TEST(Characters, AllScalarCounts) {
  EXPECT_EQ(brute_force_characters(build_all_scalar(Semilattice::diamond())).size(), 4u);
  for (int n = 1; n <= 8; ++n)
    EXPECT_EQ(brute_force_characters(build_all_scalar(Semilattice::chain(n))).size(), static_cast<std::size_t>(n));
  const auto single = brute_force_characters(build_all_scalar(Semilattice::chain(1)));
  EXPECT_NEAR(std::abs(single[0].values(0) - 1.0), 0.0, 1e-12);
}

TEST(Characters, GradedFormula) {
  for (const auto& L : {Semilattice::diamond(), Semilattice::chain(5), Semilattice::antichain_over_bottom(3)}) {
    const auto spec = build_all_scalar(L);
    const auto chars = graded_characters(spec);
    ASSERT_EQ(static_cast<int>(chars.size()), L.size());
    for (const auto& c : chars) {
      const int i = c.tag->first;
      for (int j = 0; j < L.size(); ++j) EXPECT_EQ(c.values(j), cplx(L.leq(i, j) ? 1.0 : 0.0));
    }
  }
  const auto d = graded_characters(build_all_scalar(Semilattice::diamond()));
  EXPECT_EQ(d[0].tag->first, 0);
  for (int j = 0; j < 4; ++j) EXPECT_EQ(d[0].values(j), cplx(1.0));
}

TEST(Characters, CosetCountIsSumOfIndices) {
  const auto g = FiniteGroup::symmetric3();
  const auto cs = build_demo("coset-s3");
  const auto chars = graded_characters(cs.spec);
  int expected = 0;
  for (int i = 0; i < cs.spec.size(); ++i) expected += cs.spec.component(i).dim();
  EXPECT_EQ(static_cast<int>(chars.size()), expected);
  EXPECT_EQ(expected, 6 + 3 + 2 + 1);
  EXPECT_TRUE(same_set(chars, brute_force_characters(cs.spec), kCharacterTol));
}

TEST(CharactersProperty, GradedEqualsBruteForceOnCommutativeCorpus) {
  for (const auto& c : fixtures::commutative_corpus()) {
    SCOPED_TRACE(c.name);
    const auto g = graded_characters(c.spec), b = brute_force_characters(c.spec);
    EXPECT_TRUE(same_set(g, b, kCharacterTol));
    const auto table = product_table(c.spec);
    for (const auto& x : b) EXPECT_LE(character_residual(c.spec, table, x), 1e-8);
  }
}

TEST(CharactersProperty, SeedDoesNotChangeTheSet) {
  const auto spec = build_demo("coset-z4").spec;
  EXPECT_TRUE(same_set(brute_force_characters(spec, 1), brute_force_characters(spec, 12345), kCharacterTol));
}

TEST(Characters, Errors) {
  EXPECT_EQ(code_of([] { brute_force_characters(m2_chain()); }), ErrorCode::NotCommutative);
  EXPECT_EQ(code_of([] { graded_characters(m2_chain()); }), ErrorCode::ComponentNotCommutative);
  EXPECT_EQ(code_of([] { finishing_correspondence(nonunital_chain()); }), ErrorCode::NotAllScalar);
}

TEST(Finishing, Diamond) {
  const auto pairs = finishing_correspondence(build_all_scalar(Semilattice::diamond()));
  ASSERT_EQ(pairs.size(), 4u);
  std::vector<IndexSet> sets;
  for (const auto& p : pairs) sets.push_back(p.set);
  EXPECT_EQ(sets, (std::vector<IndexSet>{{3}, {1, 3}, {2, 3}, {0, 1, 2, 3}}));
}

TEST(Finishing, ChainSuffixes) {
  for (int n = 1; n <= 6; ++n) {
    const auto pairs = finishing_correspondence(build_all_scalar(Semilattice::chain(n)));
    ASSERT_EQ(static_cast<int>(pairs.size()), n);
    for (const auto& p : pairs) {
      IndexSet suffix(n - p.set.front());
      std::iota(suffix.begin(), suffix.end(), p.set.front());
      EXPECT_EQ(p.set, suffix);
    }
  }
}

TEST(Restriction, DiamondOntoA1) {
  const auto d = build_all_scalar(Semilattice::diamond());
  const auto rm = restriction_spectrum_map(d, {1, 3});
  ASSERT_EQ(rm.entries.size(), 4u);
  // (source index, image index) in full-spec numbering
  const std::vector<std::pair<int, int>> want = {{0, 1}, {1, 1}, {2, 3}, {3, 3}};
  for (std::size_t k = 0; k < want.size(); ++k) {
    EXPECT_EQ(rm.entries[k].source.tag->first, want[k].first);
    EXPECT_EQ(rm.entries[k].image_tag.first, want[k].second);
  }
  EXPECT_LE(rm.oracle_residual, kCharacterTol);
}

TEST(Restriction, IdentityAndPoint) {
  const auto d = build_all_scalar(Semilattice::diamond());
  for (const auto& e : restriction_spectrum_map(d, {0, 1, 2, 3}).entries)
    EXPECT_EQ(e.source.tag->first, e.image_tag.first);
  const auto c = build_all_scalar(Semilattice::chain(3));
  for (const auto& e : restriction_spectrum_map(c, {2}).entries) EXPECT_EQ(e.image_tag.first, 2);
}

TEST(Restriction, Errors) {
  const auto d = build_all_scalar(Semilattice::diamond());
  EXPECT_EQ(code_of([&] { restriction_spectrum_map(d, {1, 2}); }), ErrorCode::NotSubsemilattice);
  EXPECT_EQ(code_of([&] { restriction_spectrum_map(d, {0, 1}); }), ErrorCode::NotCofinal);
  EXPECT_EQ(code_of([&] { restriction_spectrum_map(nonunital_chain(), {1}); }), ErrorCode::NonUnitalStructureMap);
}

TEST(Genus, SmallTable) {
  const std::vector<std::pair<int, bool>> want = {{1, false}, {1, true}, {2, false}, {2, true}};
  for (int n = 2; n <= 5; ++n) {
    const auto g = genus_of_line_arrangement(n);
    EXPECT_EQ(g.genus, want[n - 2].first) << n;
    EXPECT_EQ(g.pinched, want[n - 2].second) << n;
  }
  EXPECT_EQ(genus_of_line_arrangement(3).vertex_orbits, 2);
  EXPECT_EQ(code_of([] { genus_of_line_arrangement(1); }), ErrorCode::BadN);
}

TEST(GenusProperty, OrbitsMatchGcd) {
  for (int n = 2; n <= 50; ++n) {
    const auto g = genus_of_line_arrangement(n);
    EXPECT_EQ(g.vertex_orbits, std::gcd(n - 1, 2 * n));
    EXPECT_EQ(g.genus, n / 2);
    EXPECT_EQ(g.euler_char, g.surface_vertices - g.edges + g.faces);
  }
}

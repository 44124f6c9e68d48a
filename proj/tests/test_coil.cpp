#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace gridclass;
using namespace testsupport;

TEST_CASE("the figure coil of length 19") {
  bool matched = false;
  for (int start = 1; start <= 6; ++start) {
    for (Chirality chir : {Chirality::A, Chirality::B}) {
      auto [g, cert] = build_coil(m3(), cycles(m3())[0], start, chir, 19);
      if (g.perm() == perm("2 4 19 6 17 7 15 5 8 3 10 1 12 9 14 11 16 13 18")) {
        matched = true;
        CHECK(is_indivisible(g));
        CHECK(cert.order.size() == 19);
        // v_1 is the uppermost point of the bottom-left cell
        CHECK(g.cell_at(cert.order[0]) == Cell{1, 1});
        CHECK(g.perm().at(cert.order[0]) == 7);
      }
    }
  }
  CHECK(matched);
}

TEST_CASE("base case: the shortest coil extends a minimal indivisible") {
  auto [c5, cert] = build_coil(msm(), cycles(msm())[0], 1, Chirality::A, 5);
  CHECK(c5.size() == 5);
  std::vector<int> base(cert.order.begin(), cert.order.begin() + 4);
  auto [a, b] = minimal_indivisibles(msm(), cycles(msm())[0]);
  CHECK(c5.subpermutation(base).same_gridding(a));
  CHECK(c5.cell_at(cert.order[4]) == c5.cell_at(cert.order[0]));
}

TEST_CASE("build_coil argument checking") {
  CHECK_THROWS_AS(build_coil(msm(), cycles(msm())[0], 1, Chirality::A, 4), error);
  CHECK_THROWS_AS(build_coil(msm(), cycles(msm())[0], 5, Chirality::A, 6), error);
  CHECK_THROWS_AS(build_coil(msm(), cycles(msm())[0], 0, Chirality::A, 6), error);
}

TEST_CASE("the twelve coils of a fixed length are distinct") {
  std::set<Permutation> seen;
  for (int start = 1; start <= 6; ++start)
    for (Chirality chir : {Chirality::A, Chirality::B})
      seen.insert(coil_permutation(m3(), cycles(m3())[0], start, chir, 13));
  CHECK(seen.size() == 12);
}

TEST_CASE("coil recognition by candidate comparison") {
  auto [c19, cert19] = build_coil(m3(), cycles(m3())[0], 1, Chirality::A, 19);
  const auto rec = is_gridded_coil(c19);
  REQUIRE(rec.has_value());
  CHECK(rec->cycle.length() == 6);
  CHECK(rec->start_cell == 1);
  CHECK(rec->chirality == Chirality::A);

  auto [a, b] = minimal_indivisibles(msm(), cycles(msm())[0]);
  CHECK(!is_gridded_coil(a).has_value());  // coils are longer than the cycle

  auto [c5, cert5] = build_coil(msm(), cycles(msm())[0], 1, Chirality::A, 5);
  CHECK(!is_gridded_coil(m_sum(c5, c5)).has_value());  // sums are divisible
}

TEST_CASE("recognizer agrees with the forced-assignment oracle up to length 7") {
  const GriddingMatrix m = msm();
  for (int n = 5; n <= 7; ++n) {
    for_all_gridded(m, n, [&](const GriddedPermutation& g) {
      CHECK(is_gridded_coil(g).has_value() == naive_is_coil(g));
    });
  }
}

TEST_CASE("coil decompositions of coils are singleton chains") {
  auto [c19, cert] = build_coil(m3(), cycles(m3())[0], 1, Chirality::A, 19);
  const CoilDecomposition dec = coil_decomposition(c19, cert.order[0]);
  CHECK(dec.length() == 19);
  for (int i = 0; i < 19; ++i) {
    CHECK(dec.boxes[static_cast<size_t>(i)].size() == 1);
    CHECK(dec.coil_points[static_cast<size_t>(i)] == cert.order[static_cast<size_t>(i)]);
  }

  auto [a, b] = minimal_indivisibles(msm(), cycles(msm())[0]);
  const CoilDecomposition mdec = coil_decomposition(a);
  CHECK(mdec.length() == 4);
  for (const auto& box : mdec.boxes) CHECK(box.size() == 1);

  // an interior point is not a valid seed
  CHECK_THROWS_AS(coil_decomposition(c19, cert.order[8]), error);
}

TEST_CASE("boxes follow the cycle cells") {
  std::mt19937 rng(89);
  for (int round = 0; round < 80; ++round) {
    const GriddedPermutation g = random_gridded(msm(), 8, rng);
    if (!is_indivisible(g)) continue;
    const CoilDecomposition dec = coil_decomposition(g);
    const int l = 4;
    int covered = 0;
    for (int i = 0; i < dec.length(); ++i) {
      covered += static_cast<int>(dec.boxes[static_cast<size_t>(i)].size());
      if (i >= l) CHECK(dec.box_cells[static_cast<size_t>(i)] == dec.box_cells[static_cast<size_t>(i - l)]);
    }
    CHECK(covered == g.size());
    // the first points of the boxes form the associated coil when long enough
    if (dec.length() > l) {
      const auto rec = is_gridded_coil(g.subpermutation(dec.coil_points));
      CHECK(rec.has_value());
      CHECK(rec->length == dec.length());
    }
  }
}

TEST_CASE("good coil decompositions repair bad seeds") {
  // the length-12 coil whose decomposition from one seed has two fat boxes
  const Permutation p12 = perm("2 12 4 11 6 9 5 7 3 8 1 10");
  const auto g = member(p12, msm());
  REQUIRE(g.has_value());
  REQUIRE(is_gridded_coil(*g).has_value());
  bool some_seed_is_bad = false;
  for (int seed : last_point_positions(*g)) {
    const CoilDecomposition dec = coil_decomposition(*g, seed);
    for (int i = 0; i < 4; ++i)
      if (dec.boxes[static_cast<size_t>(i)].size() > 1) some_seed_is_bad = true;
  }
  CHECK(some_seed_is_bad);
  const CoilDecomposition good = good_coil_decomposition(*g);
  for (int i = 0; i < 4; ++i) CHECK(good.boxes[static_cast<size_t>(i)].size() == 1);
}

TEST_CASE("good coil decompositions satisfy one of the three clauses") {
  std::mt19937 rng(97);
  for (int round = 0; round < 120; ++round) {
    const GriddedPermutation g = random_gridded(msm(), static_cast<int>(rng() % 7 + 2), rng);
    if (!is_indivisible(g)) continue;
    const CoilDecomposition dec = good_coil_decomposition(g);
    const OrientationDigraph d = orientation_digraph(g);
    const int l = 4;
    bool a = dec.length() >= l;
    for (int i = 0; i < l && a; ++i) a = dec.boxes[static_cast<size_t>(i)].size() == 1;
    bool b = dec.length() >= l + 1 && dec.boxes[static_cast<size_t>(l)].size() >= 2;
    bool c = false;
    for (int i = 1; i <= std::min(l, dec.length() - 1); ++i)
      for (int x : dec.boxes[static_cast<size_t>(i) - 1])
        if (x != dec.coil_points[static_cast<size_t>(i) - 1] &&
            d.edge(x, dec.coil_points[static_cast<size_t>(i)]))
          c = true;
    CHECK((a || b || c));
  }
}

TEST_CASE("regridding to an acyclic path matrix") {
  auto path_shape = [](const GriddingMatrix& n, int expected_entries) {
    CHECK(n.nonzero_count() == expected_entries);
    CHECK(classify(n) == MatrixClass::Acyclic);
    const RowColumnGraph g = row_column_graph(n);
    int leaves = 0, isolated = 0;
    for (int v = 1; v <= g.vertex_count(); ++v) {
      CHECK(g.adj[static_cast<size_t>(v)].size() <= 2);
      if (g.adj[static_cast<size_t>(v)].size() == 1) ++leaves;
      if (g.adj[static_cast<size_t>(v)].empty()) ++isolated;
    }
    CHECK(isolated == 0);
    CHECK(leaves == (expected_entries >= 1 ? 2 : 0));
  };

  auto [c19, cert] = build_coil(m3(), cycles(m3())[0], 1, Chirality::A, 19);
  auto [n19, body19] = regrid_to_acyclic(c19);
  path_shape(n19, 19);
  CHECK(body19.perm() == c19.perm());

  auto [c10, cert10] = build_coil(msm(), cycles(msm())[0], 2, Chirality::B, 10);
  auto [n10, body10] = regrid_to_acyclic(c10);
  path_shape(n10, 10);

  auto [a, b] = minimal_indivisibles(msm(), cycles(msm())[0]);
  auto [n4, body4] = regrid_to_acyclic(a);
  path_shape(n4, 4);

  auto [n1, body1] = regrid_to_acyclic(make_gridded(perm("1"), msm(), {1}, {1}));
  CHECK(n1.nonzero_count() == 1);

  // the box partition is exactly the refinement's nonzero cells
  const CoilDecomposition dec = coil_decomposition(c19, cert.order[0]);
  std::set<std::vector<int>> boxes(dec.boxes.begin(), dec.boxes.end());
  std::set<std::vector<int>> refined_cells;
  for (const Cell c : n19.nonzero_cells()) {
    std::vector<int> pts = body19.points_in_cell(c);
    if (!pts.empty()) refined_cells.insert(pts);
  }
  CHECK(boxes == refined_cells);
}

TEST_CASE("random indivisibles regrid into paths") {
  std::mt19937 rng(101);
  for (int round = 0; round < 60; ++round) {
    const GriddedPermutation g = random_gridded(msm(), 9, rng);
    if (!is_indivisible(g)) continue;
    auto [n, body] = regrid_to_acyclic(g);
    CHECK(classify(n) == MatrixClass::Acyclic);
    CHECK(body.perm() == g.perm());
    CHECK(n.nonzero_count() == coil_decomposition(g).length());
  }
}

TEST_CASE("end inflation") {
  bool matched = false;
  for (int start = 1; start <= 6; ++start) {
    for (Chirality chir : {Chirality::A, Chirality::B}) {
      auto [g, cert] = build_coil(m3(), cycles(m3())[0], start, chir, 18);
      if (end_inflate(g, cert).perm() == perm("4 20 6 18 7 8 16 5 9 3 11 2 1 13 10 15 12 17 14 19"))
        matched = true;
    }
  }
  CHECK(matched);
}

TEST_CASE("deleting either twin of an inflated end restores a coil") {
  auto [c9, cert] = build_coil(msm(), cycles(msm())[0], 1, Chirality::A, 9);
  const GriddedPermutation inflated = end_inflate(c9, cert);
  CHECK(inflated.size() == 11);
  CHECK(is_indivisible(inflated));
  // the twins sit at adjacent positions; drop one of each pair
  for (int p = 1; p <= inflated.size(); ++p) {
    std::vector<int> rest;
    for (int q = 1; q <= inflated.size(); ++q)
      if (q != p) rest.push_back(q);
    const GriddedPermutation sub = inflated.subpermutation(rest);
    if (sub.perm() == c9.perm()) CHECK(is_gridded_coil(sub).has_value());
  }
  // a wrong certificate is rejected
  auto [c10, cert10] = build_coil(msm(), cycles(msm())[0], 1, Chirality::A, 10);
  CHECK_THROWS_AS(end_inflate(c10, cert), error);
}

TEST_CASE("coil types") {
  auto [c9, cert] = build_coil(msm(), cycles(msm())[0], 1, Chirality::A, 9);
  CHECK(coil_type(cert) == CoilType{1, 2, 1});

  // equal types force lengths congruent modulo the cycle length
  for (int k : {10, 11, 12, 13}) {
    auto [ck, certk] = build_coil(msm(), cycles(msm())[0], 1, Chirality::A, k);
    if (coil_type(certk) == coil_type(cert)) CHECK((k - 9) % 4 == 0);
  }
  auto [c9b, certb] = build_coil(msm(), cycles(msm())[0], 1, Chirality::B, 9);
  CHECK(coil_type(certb) != coil_type(cert));
  CHECK(coil_type(certb).s2 == 4);
}

TEST_CASE("every window of cycle length is a directed cycle") {
  auto [c13, cert] = build_coil(msm(), cycles(msm())[0], 3, Chirality::B, 13);
  const OrientationDigraph d = orientation_digraph(c13);
  for (int i = 0; i + 4 <= 13; ++i) {
    std::vector<int> window(cert.order.begin() + i, cert.order.begin() + i + 4);
    const OrientationDigraph sub = d.induced(window);
    CHECK(sub.edges().size() == 4);
    CHECK(sub.strongly_connected_components().second == 1);
  }
}

TEST_CASE("containment ladder between coils") {
  for (const GriddingMatrix& m : {msm(), m3()}) {
    const CycleDescriptor cycle = cycles(m)[0];
    const int l = cycle.length();
    for (Chirality chir : {Chirality::A, Chirality::B}) {
      for (int k = l + 2; k <= 20; ++k) {
        CHECK(contains(coil_permutation(m, cycle, 1, chir, k - 1),
                       coil_permutation(m, cycle, 1, chir, k))
                  .has_value());
      }
      // a longer coil of the same chirality contains xi whatever its start
      const Permutation xi = coil_permutation(m, cycle, 1, chir, l + 2);
      for (int start = 1; start <= l; ++start)
        CHECK(contains(xi, coil_permutation(m, cycle, start, chir, 2 * l + 2)).has_value());
    }
  }
}

TEST_CASE("longest contained coil") {
  const Permutation c12 = coil_permutation(msm(), cycles(msm())[0], 1, Chirality::A, 12);
  const auto hit = longest_coil_contained(c12, msm());
  REQUIRE(hit.has_value());
  CHECK(hit->length == 12);

  CHECK(!longest_coil_contained(perm("2 4 1 3"), msm()).has_value());

  // the first counterexample permutation holds a coil of length 6 and none
  // longer: its six middle points form a gridded coil by construction
  const Permutation pi1 = perm("3 5 1 6 4 8 2 7");
  const GriddingMatrix c4 = carrier4();
  const CycleDescriptor cycle = cycles(c4)[0];
  bool has6 = false, has7 = false;
  for (int start = 1; start <= 4; ++start)
    for (Chirality chir : {Chirality::A, Chirality::B}) {
      has6 = has6 || contains(coil_permutation(c4, cycle, start, chir, 6), pi1).has_value();
      has7 = has7 || contains(coil_permutation(c4, cycle, start, chir, 7), pi1).has_value();
    }
  CHECK(has6);
  CHECK(!has7);
  const auto best = longest_coil_contained(pi1, c4);
  REQUIRE(best.has_value());
  CHECK(best->length == 6);

  CHECK_THROWS_AS(longest_coil_contained(
                      pi1, GriddingMatrix::parse("-1 0 0 1 1\n0 -1 1 0 0\n-1 1 -1 0 0\n1 0 0 -1 0")),
                  error);
}

TEST_CASE("encoding singletons and coils") {
  const auto single = encode_indivisible(make_gridded(perm("1"), msm(), {0}, {1}));
  CHECK(single.leading == 0);
  CHECK(single.trailing == 0);
  CHECK(single.body.size() == 1);
  CHECK(decode_indivisible(single).same_gridding(make_gridded(perm("1"), msm(), {0}, {1})));

  auto [c19, cert] = build_coil(m3(), cycles(m3())[0], 1, Chirality::A, 19);
  const auto code = encode_indivisible(c19);
  CHECK(code.leading + code.trailing + code.body.size() == 21);
  CHECK(decode_indivisible(code).same_gridding(c19));
}

TEST_CASE("encode/decode round trip, exhaustive to length 7") {
  const GriddingMatrix m = msm();
  for (int n = 1; n <= 7; ++n) {
    for_all_gridded(m, n, [&](const GriddedPermutation& g) {
      if (!is_indivisible(g)) return;
      CHECK(decode_indivisible(encode_indivisible(g)).same_gridding(g));
    });
  }
}

TEST_CASE("code dominance reflects gridded containment") {
  // indivisibles encoded over the same refinement: componentwise dominance of
  // the codes forces gridded containment
  std::vector<std::pair<GriddedPermutation, IndivisibleCode>> pool;
  for (int n = 4; n <= 8; ++n) {
    for_all_gridded(msm(), n, [&](const GriddedPermutation& g) {
      if (!is_indivisible(g) || g.size() < 4) return;
      pool.emplace_back(g, encode_indivisible(g));
    });
  }
  int compared = 0;
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = 0; j < pool.size(); ++j) {
      if (i == j) continue;
      const auto& [gi, ci] = pool[i];
      const auto& [gj, cj] = pool[j];
      if (!ci.refined.same_entries(cj.refined)) continue;
      if (ci.box_ncells != cj.box_ncells) continue;
      if (ci.leading > cj.leading || ci.trailing > cj.trailing) continue;
      if (!gridded_contains(ci.body, cj.body)) continue;
      ++compared;
      CHECK(gridded_contains(gi, gj).has_value());
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("interior deletion splits a coil into tail and head") {
  for (const GriddingMatrix& m : {msm(), m3()}) {
    const CycleDescriptor cycle = cycles(m)[0];
    const int l = cycle.length();
    for (Chirality chir : {Chirality::A, Chirality::B}) {
      for (int k = l + 1; k <= 15; ++k) {
        auto [coil, cert] = build_coil(m, cycle, 1, chir, k);
        for (int i = 2; i < k; ++i) {
          std::vector<int> rest;
          for (int t = 1; t <= k; ++t)
            if (t != i) rest.push_back(cert.order[static_cast<size_t>(t) - 1]);
          const GriddedPermutation shrunk = coil.subpermutation(rest);
          std::vector<int> tail(cert.order.begin() + i, cert.order.end());
          std::vector<int> head(cert.order.begin(), cert.order.begin() + i - 1);
          const GriddedPermutation tail_part = coil.subpermutation(tail);
          const GriddedPermutation head_part = coil.subpermutation(head);
          CHECK(m_sum(tail_part, head_part).same_gridding(shrunk));
          CHECK(!is_indivisible(shrunk));
          // the two sides are themselves indivisible exactly when each keeps
          // at least l points, and then they are the whole decomposition
          if (static_cast<int>(tail.size()) >= l && static_cast<int>(head.size()) >= l) {
            const auto parts = decompose(shrunk);
            REQUIRE(parts.size() == 2);
            CHECK(parts[0].same_gridding(tail_part));
            CHECK(parts[1].same_gridding(head_part));
          }
        }
      }
    }
  }
}

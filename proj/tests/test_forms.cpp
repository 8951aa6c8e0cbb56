#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hodgekit/form.hpp"
#include "hodgekit/primitive.hpp"

using namespace hodgekit;

namespace {

// Oracle: sign of the permutation sorting a word of distinct letters, by counting inversions.
int permutation_sign(const std::vector<int>& word) {
  int inv = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (word[i] > word[j]) ++inv;
  return (inv & 1) ? -1 : 1;
}

// Letters: dz_j -> j, dzbar_j -> 100 + j, so canonical order (holo first) is ascending.
std::vector<int> letters(const Monomial& m) {
  std::vector<int> w;
  for (int j = 0; j < 16; ++j)
    if (m.holo >> j & 1) w.push_back(j);
  for (int j = 0; j < 16; ++j)
    if (m.anti >> j & 1) w.push_back(100 + j);
  return w;
}

int brute_wedge_sign(const Monomial& a, const Monomial& b) {
  auto w = letters(a);
  const auto wb = letters(b);
  w.insert(w.end(), wb.begin(), wb.end());
  auto sorted = w;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
  return permutation_sign(w);
}

}  // namespace

TEST_CASE("merge_sign agrees with inversion counting") {
  for (IndexMask a = 0; a < 32; ++a)
    for (IndexMask b = 0; b < 32; ++b) {
      if (a & b) continue;
      std::vector<int> w;
      for (int j = 0; j < 5; ++j)
        if (a >> j & 1) w.push_back(j);
      for (int j = 0; j < 5; ++j)
        if (b >> j & 1) w.push_back(j);
      CHECK(merge_sign(a, b) == permutation_sign(w));
    }
}

TEST_CASE("wedge_sign agrees with brute-force reordering") {
  const HermitianSpace s(3);
  for (int p1 = 0; p1 <= 3; ++p1)
    for (int q1 = 0; q1 <= 3; ++q1)
      for (int p2 = 0; p2 <= 3 - p1; ++p2)
        for (int q2 = 0; q2 <= 3; ++q2)
          for (const auto& a : monomial_basis(s, p1, q1))
            for (const auto& b : monomial_basis(s, p2, q2)) CHECK(wedge_sign(a, b) == brute_wedge_sign(a, b));
}

TEST_CASE("wedge is associative and graded commutative") {
  const HermitianSpace s(3);
  const Form u = random_form(s, 1, 0, 1) + random_form(s, 0, 1, 2);
  const Form v = random_form(s, 1, 1, 3);
  const Form w = random_form(s, 0, 1, 4);
  CHECK(sup_norm(wedge(wedge(u, v), w) - wedge(u, wedge(v, w))) < 1e-12);
  const Form a = random_form(s, 1, 0, 5);
  const Form b = random_form(s, 0, 1, 6);
  CHECK(sup_norm(wedge(a, b) + wedge(b, a)) < 1e-12);
  CHECK(sup_norm(wedge(v, a) - wedge(a, v)) < 1e-12);
  CHECK(wedge(dz(s, 2), dz(s, 2)).empty());
}

TEST_CASE("conjugation") {
  const HermitianSpace s(3);
  CHECK(sup_norm(conjugate(dz(s, 1)) - dzbar(s, 1)) == 0.0);
  const Form u = random_form(s, 1, 2, 9);
  CHECK(sup_norm(conjugate(conjugate(u)) - u) == 0.0);
  CHECK(bidegree_support(conjugate(u)) == std::set<std::pair<int, int>>{{2, 1}});
  // conj(a ^ b) = conj(a) ^ conj(b)
  const Form a = random_form(s, 1, 1, 10);
  const Form b = random_form(s, 0, 1, 11);
  CHECK(sup_norm(conjugate(wedge(a, b)) - wedge(conjugate(a), conjugate(b))) < 1e-12);
}

TEST_CASE("weil operator acts by i^(p-q)") {
  const HermitianSpace s(3);
  const Form u = random_form(s, 2, 0, 3);
  CHECK(sup_norm(weil(u) + u) < 1e-15);
  const Form v = random_form(s, 1, 2, 4);
  CHECK(sup_norm(weil(v) - Complex(0, -1) * v) < 1e-15);
  const Form w = random_form(s, 2, 2, 5);
  CHECK(sup_norm(weil(w) - w) == 0.0);
}

TEST_CASE("construction validates input") {
  const HermitianSpace s(2);
  Form::Terms bad;
  bad[Monomial{0b100, 0}] = 1.0;
  CHECK_THROWS_AS(Form(s, bad), std::invalid_argument);
  Form::Terms nan;
  nan[Monomial{1, 0}] = Complex(std::nan(""), 0);
  CHECK_THROWS_AS(Form(s, nan), std::invalid_argument);
  CHECK_THROWS(HermitianSpace(0));
  CHECK_THROWS(dz(s, 3));
  CHECK_THROWS(add(dz(s, 1), dz(HermitianSpace(3), 1)));
  Form::Terms zero;
  zero[Monomial{1, 0}] = 0.0;
  CHECK(Form(s, zero).empty());
}

TEST_CASE("projections and degree bookkeeping") {
  const HermitianSpace s(3);
  const Form u = random_form(s, 1, 1, 1) + random_form(s, 2, 0, 2) + random_form(s, 1, 0, 3);
  CHECK(u.pure_degree() == -1);
  CHECK(degree_project(u, 2).pure_degree() == 2);
  CHECK(bidegree_support(grade_project(u, 2, 0)).size() == 1);
  CHECK(Form(s).pure_degree() == -1);
}

TEST_CASE("text rendering is canonical") {
  const HermitianSpace s(2);
  const Form u = Complex(0, 1) * wedge(dz(s, 1), dzbar(s, 2)) + 2.0 * dz(s, 2) + Form::scalar(s, 0.5);
  CHECK(to_string(u) == "(0.5+0i) 1\n(2+0i) dz2\n(0+1i) dz1 dzb2");
}

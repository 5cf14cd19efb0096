#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fundgraph/util.hpp"

using namespace fundgraph;

TEST_CASE("string helpers") {
  CHECK(to_lower("AbC") == "abc");
  CHECK(trim("  x \t") == "x");
  CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(contains_ci("Hello World", "o w"));
  CHECK_FALSE(contains_ci("hello", "z"));
  CHECK(contains_ci("x", ""));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -1.5, 0.1, 1e-300, 3.141592653589793, 0.7967075809905066}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("rng determinism and ranges") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    const double d = r.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    CHECK(r.next_below(10) < 10);
  }
}

TEST_CASE("rng uniform mean near one half") {
  Rng r(1);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += r.next_double();
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("shuffle is a permutation") {
  Rng r(3);
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7};
  r.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("fnv1a64 is stable") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") != fnv1a64("b"));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corpus_maps.hpp"
#include "random_maps.hpp"

using namespace ttlab;
using namespace ttlab::testing;

namespace {

GraphMap rose() { return corpus_map("rose.tt"); }

IntMatrix letter_counts(const std::vector<std::string>& images) {
    int n = static_cast<int>(images.size());
    IntMatrix m = IntMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (char c : images[j]) m((c | 32) - 'a', j) += 1;
    return m;
}

}  // namespace

TEST_CASE("apply_to_path") {
    GraphMap g = rose();
    CHECK(format_word(apply_to_path(g, parse_word("a"), false)) == "cab");
    CHECK(format_word(apply_to_path(g, parse_word("bc"), true)) == "caacab");
    CHECK(apply_to_path(g, {}, true).empty());
    for (int e = 0; e < 3; ++e) CHECK(apply_to_path(g, {positive_dir(e)}, true) == g.images()[e]);
}

TEST_CASE("apply_to_path length with and without reduction") {
    GraphMap g = rose();
    Path p = parse_word("aBbc");
    Path raw = apply_to_path(g, p, false), red = apply_to_path(g, p, true);
    CHECK(raw.size() == 3 + 2 + 2 + 4);
    CHECK(red.size() < raw.size());
    Path q = parse_word("abc");
    CHECK(apply_to_path(g, q, true).size() == apply_to_path(g, q, false).size());
}

TEST_CASE("iterate") {
    GraphMap g = rose();
    CHECK(iterate(g, 1).images() == g.images());
    GraphMap g2 = iterate(g, 2);
    CHECK(format_word(g2.images()[0]) == "acabcabca");
    CHECK(format_word(apply_to_path(g2, parse_word("bc"), true)) == "acabcabcabacabcabca");
    // g^3(bc) extends from g^2(bc) by one more substitution
    GraphMap g3 = iterate(g, 3);
    std::string expected = substitute(image_strings(g), "acabcabcabacabcabca");
    CHECK(format_word(apply_to_path(g3, parse_word("bc"), true)) == expected);
    GraphMap id = GraphMap::identity(g.graph());
    CHECK(iterate(id, 5).images() == id.images());
    CHECK_THROWS_AS(iterate(g, 40, 1000), GrowthCapError);
    CHECK_THROWS_AS(iterate(g, 0), PreconditionError);
}

TEST_CASE("iterate matches string substitution on the corpus") {
    for (const auto& f : corpus_files()) {
        GraphMap g = corpus_map(f);
        auto img = image_strings(g);
        GraphMap g2 = iterate(g, 2);
        for (int e = 0; e < g.n_edges(); ++e)
            CHECK(format_word(g2.images()[e]) == substitute(img, std::string(1, char('a' + e)), 2));
    }
}

TEST_CASE("direction_map") {
    GraphMap g = rose();
    auto dm = direction_map(g);
    auto at = [&](char c) { return letter(dm[dir_from_letter(c)]); };
    CHECK(at('a') == 'c');
    CHECK(at('b') == 'c');
    CHECK(at('c') == 'a');
    CHECK(at('A') == 'B');
    CHECK(at('B') == 'A');
    CHECK(at('C') == 'B');
    auto id = direction_map(GraphMap::identity(g.graph()));
    for (Dir d = 0; d < 6; ++d) CHECK(id[d] == d);
}

TEST_CASE("direction_map of a power is the composed map") {
    for (const auto& f : corpus_files()) {
        GraphMap g = corpus_map(f);
        auto dm = direction_map(g);
        for (int k = 1; k <= 3; ++k) {
            auto dk = direction_map(iterate(g, k, 100'000'000));
            for (Dir d = 0; d < g.n_dirs(); ++d) {
                Dir x = d;
                for (int i = 0; i < k; ++i) x = dm[x];
                CHECK(dk[d] == x);
            }
        }
    }
}

TEST_CASE("transition_matrix") {
    GraphMap g = rose();
    IntMatrix m = transition_matrix(g);
    IntMatrix expected(3, 3);
    expected << 1, 1, 2, 1, 0, 1, 1, 1, 1;
    CHECK(m == expected);
    CHECK(transition_matrix(GraphMap::identity(g.graph())) == IntMatrix::Identity(3, 3));
    GraphMap four = corpus_map("index_mh_m1.tt");
    IntMatrix m4 = transition_matrix(four);
    CHECK(m4(3, 3) == 2);
    CHECK(m4(1, 3) == 1);
    CHECK(m4(0, 3) == 0);
}

TEST_CASE("transition matrix counts letters and column sums are image lengths") {
    for (const auto& f : corpus_files()) {
        GraphMap g = corpus_map(f);
        IntMatrix m = transition_matrix(g);
        CHECK(m == letter_counts(image_strings(g)));
        for (int j = 0; j < g.n_edges(); ++j) CHECK(m.col(j).sum() == static_cast<std::int64_t>(g.images()[j].size()));
    }
}

TEST_CASE("transition matrix of a power is the matrix power") {
    for (const auto& f : corpus_files()) {
        GraphMap g = corpus_map(f);
        IntMatrix m = transition_matrix(g), mk = m;
        for (int k = 2; k <= 4; ++k) {
            mk = mk * m;
            CHECK(transition_matrix(iterate(g, k, 100'000'000)) == mk);
        }
    }
}

TEST_CASE("is_primitive") {
    Primitivity p = is_primitive(transition_matrix(rose()));
    CHECK(p.primitive);
    CHECK(p.exponent == 2);
    CHECK(p.exponent <= wielandt_bound(3));
    CHECK_FALSE(is_primitive(IntMatrix::Identity(3, 3)).primitive);
    IntMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK_FALSE(is_primitive(swap).primitive);
    // the Wielandt matrix attains the bound
    IntMatrix w = IntMatrix::Zero(4, 4);
    w(0, 1) = w(1, 2) = w(2, 3) = w(3, 0) = w(3, 1) = 1;
    Primitivity pw = is_primitive(w);
    CHECK(pw.primitive);
    CHECK(pw.exponent == wielandt_bound(4));
}

TEST_CASE("primitive implies irreducible") {
    for (const auto& f : corpus_files()) {
        IntMatrix m = transition_matrix(corpus_map(f));
        REQUIRE(is_primitive(m).primitive);
        int n = static_cast<int>(m.rows());
        // reachability closure
        IntMatrix r = (m.array() > 0).cast<std::int64_t>();
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (r(i, k) && r(k, j)) r(i, j) = 1;
        CHECK((r.array() > 0).all());
    }
}

TEST_CASE("pf_eigenvalue") {
    IntMatrix two(1, 1);
    two << 2;
    CHECK(pf_eigenvalue(two) == doctest::Approx(2.0).epsilon(1e-9));
    IntMatrix fib(2, 2);
    fib << 1, 1, 1, 0;
    CHECK(pf_eigenvalue(fib) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-9));
    double lambda = pf_eigenvalue(transition_matrix(rose()));
    auto charpoly = [](double x) { return x * x * x - 2 * x * x - 3 * x - 1; };
    CHECK(lambda > 3);
    CHECK(lambda < 4);
    CHECK(std::abs(charpoly(lambda)) < 1e-6);
    CHECK_THROWS_AS(pf_eigenvalue(IntMatrix::Identity(2, 2)), PreconditionError);
}

TEST_CASE("pf estimate brackets") {
    for (const auto& f : corpus_files()) {
        PfEstimate e = pf_estimate(transition_matrix(corpus_map(f)));
        CHECK(e.lower <= e.lambda);
        CHECK(e.lambda <= e.upper);
        CHECK((e.upper - e.lower) / e.lambda < 1e-9);
        CHECK(e.lengths.minCoeff() == doctest::Approx(1.0));
    }
}

TEST_CASE("LengthTable and Expander agree with iterated images") {
    GraphMap g = corpus_map("index_mh_m1.tt");
    LengthTable len(g);
    auto img = image_strings(g);
    for (Dir d = 0; d < g.n_dirs(); ++d)
        for (int j = 0; j <= 3; ++j) {
            std::string w = substitute(img, std::string(1, letter(d)), j);
            CHECK(len(d, j) == w.size());
            Path word{d};
            Expander ex(g, word, j);
            std::string streamed;
            Dir x;
            while (ex.next(x)) streamed += letter(x);
            CHECK(streamed == w);
            if (w.size() > 3) {
                Expander tail(g, word, j, 3, len);
                std::string rest;
                while (tail.next(x)) rest += letter(x);
                CHECK(rest == w.substr(3));
            }
        }
}

TEST_CASE("GraphMap rejects bad images") {
    CHECK_THROWS_AS(GraphMap::from_images({parse_word("aA"), parse_word("b")}, 2), MalformedMap);
    CHECK_THROWS_AS(GraphMap::from_images({Path{}, parse_word("b")}, 2), MalformedMap);
}

#include <gtest/gtest.h>

#include <random>

#include "socialh/metrics.hpp"
#include "support.hpp"

namespace socialh {
namespace {

using testing::author_with_citations;
using testing::fixture_f1;
using testing::paper;
namespace oracle = testing::oracle;

std::vector<std::string> ids_of(const Corpus& c, const std::vector<PaperIdx>& ps) {
    std::vector<std::string> out;
    for (PaperIdx p : ps) {
        out.push_back(c.paper(p).id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TEST(HIndex, Examples) {
    EXPECT_EQ(h_index(std::vector<Count>{}), 0);
    EXPECT_EQ(h_index(std::vector<Count>{5, 5, 5, 5, 5}), 5);
    EXPECT_EQ(h_index(std::vector<Count>{10, 8, 5, 4, 3}), 4);
    EXPECT_EQ(h_index(std::vector<Count>{0, 0, 0}), 0);
    EXPECT_EQ(h_index(std::vector<Count>{100}), 1);
}

TEST(HIndex, MatchesOracleOnRandomLargerInputs) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(13, 300)(rng);
        const Count hi = std::uniform_int_distribution<Count>(0, 400)(rng);
        std::vector<Count> counts(n);
        for (Count& c : counts) {
            c = std::uniform_int_distribution<Count>(0, hi)(rng);
        }
        ASSERT_EQ(h_index(counts), oracle::h_index(counts));
    }
}

TEST(HCore, AllEqualCounts) {
    const Corpus c = Corpus::from_records(author_with_citations("a", {3, 3, 3}));
    const HCore core = h_core(c, "a");
    EXPECT_EQ(core.h, 3);
    EXPECT_EQ(core.supporting.size(), 3u);
}

TEST(HCore, TiesInflateSupport) {
    const Corpus c = Corpus::from_records(author_with_citations("a", {5, 5, 4, 4, 4, 1}));
    const HCore core = h_core(c, "a");
    EXPECT_EQ(core.h, 4);
    EXPECT_EQ(core.supporting.size(), 5u);
    EXPECT_EQ(ids_of(c, core.supporting),
              (std::vector<std::string>{"a-p0", "a-p1", "a-p2", "a-p3", "a-p4"}));
}

TEST(HCore, ZeroCitationsGiveEmptySupport) {
    const Corpus c = Corpus::from_records(author_with_citations("a", {0, 0}));
    const HCore core = h_core(c, "a");
    EXPECT_EQ(core.h, 0);
    EXPECT_TRUE(core.supporting.empty());
}

TEST(HCore, UnknownAuthorThrows) {
    const Corpus c = Corpus::from_records(fixture_f1());
    EXPECT_THROW(h_core(c, "Z"), UnknownAuthor);
    EXPECT_THROW(social_h_index(c, "Z"), UnknownAuthor);
    EXPECT_THROW(basic_stats(c, "Z"), UnknownAuthor);
}

TEST(HCore, AsOfBeforeFirstPaper) {
    const Corpus c = Corpus::from_records(fixture_f1());
    EXPECT_EQ(h_core(c, "X", 1999), HCore{});
    EXPECT_EQ(h_core(c, "X", 2000).h, 0); // citations arrive in 2001
    EXPECT_EQ(h_core(c, "X", 2001).h, 2);
}

TEST(Contrib, Examples) {
    const Corpus zero = Corpus::from_records(author_with_citations("a", {0, 0}));
    EXPECT_EQ(contrib(zero, "a-p0", "a"), Rational(0));

    const Corpus three = Corpus::from_records(author_with_citations("a", {3, 3, 3}));
    for (const char* p : {"a-p0", "a-p1", "a-p2"}) {
        EXPECT_EQ(contrib(three, p, "a"), Rational(1));
    }

    const Corpus tie = Corpus::from_records(author_with_citations("a", {5, 5, 4, 4, 4, 1}));
    for (const char* p : {"a-p0", "a-p1", "a-p2", "a-p3", "a-p4"}) {
        EXPECT_EQ(contrib(tie, p, "a"), Rational(4, 5));
    }
    EXPECT_EQ(contrib(tie, "a-p5", "a"), Rational(0));
}

TEST(Contrib, AuthorNotOnPaperThrows) {
    const Corpus c = Corpus::from_records(fixture_f1());
    EXPECT_THROW(contrib(c, "p1", "Y"), NotAnAuthor);
    EXPECT_THROW(contrib(c, "p1", "nobody"), NotAnAuthor);
    EXPECT_THROW(contrib(c, "p9", "X"), UnknownPaper);
}

TEST(SocialHIndex, FixtureF1) {
    const Corpus c = Corpus::from_records(fixture_f1());
    EXPECT_EQ(social_h_index(c, "X"), Rational(7, 4));
    EXPECT_EQ(social_h_index(c, "Y"), Rational(5, 4));
    EXPECT_EQ(contrib(c, "p3", "Y"), Rational(1, 2));
    EXPECT_EQ(contrib(c, "p2", "Y"), Rational(1, 2));
    EXPECT_EQ(contrib(c, "p2", "X"), Rational(1));
}

TEST(SocialHIndex, SingleAuthorPapersGiveH) {
    std::mt19937_64 rng(5);
    testing::RandomCorpusShape shape;
    shape.max_authors_per_paper = 1;
    for (int trial = 0; trial < 100; ++trial) {
        const Corpus c = Corpus::from_records(testing::random_records(rng, shape));
        for (std::size_t a = 0; a < c.author_count(); ++a) {
            const AuthorIdx ai{static_cast<std::uint32_t>(a)};
            ASSERT_EQ(social_h_index(c, ai), Rational(h_core(c, ai).h));
        }
    }
}

TEST(SocialHIndex, SymmetricCoauthors) {
    const Corpus c = Corpus::from_records({
        paper("p1", {"X", "Y"}, 2000, {{2001, 4}}),
        paper("p2", {"Y", "X"}, 2001, {{2002, 2}, {2003, 7}}),
        paper("p3", {"X", "Y"}, 2002, {{2003, 1}}),
    });
    EXPECT_EQ(social_h_index(c, "X"), social_h_index(c, "Y"));
    EXPECT_EQ(social_h_index(c, "X"), Rational(2));
}

TEST(BasicStats, Examples) {
    const Corpus c = Corpus::from_records(fixture_f1());
    EXPECT_EQ(basic_stats(c, "X"), (BasicStats{2, 10, 1}));
    EXPECT_EQ(basic_stats(c, "Y"), (BasicStats{2, 6, 1}));
    const Corpus solo = Corpus::from_records(author_with_citations("a", {1, 2}));
    EXPECT_EQ(basic_stats(solo, "a").distinct_coauthors, 0);
}

TEST(AllMetrics, EmptyAndF1) {
    EXPECT_TRUE(all_metrics(Corpus{}).empty());
    const MetricsTable t = all_metrics(Corpus::from_records(fixture_f1()));
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0], (MetricRow{"X", 2, Rational(7, 4), 2, 10, 1}));
    EXPECT_EQ(t[1], (MetricRow{"Y", 1, Rational(5, 4), 2, 6, 1}));
}

TEST(AllMetrics, SnapshotDropsAuthorsWithoutPapers) {
    auto records = fixture_f1();
    records.push_back(paper("late", {"Z"}, 2005, {}));
    const Corpus c = Corpus::from_records(records);
    EXPECT_EQ(all_metrics(c).size(), 3u);
    EXPECT_EQ(all_metrics(c, 2004).size(), 2u);
}

TEST(AllMetrics, AgreesWithPerAuthorOpsAndThreadCount) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const Corpus c = Corpus::from_records(testing::random_records(rng));
        const AsOf as_of = trial % 2 ? AsOf(2000 + trial % 10) : unbounded;
        const MetricsTable serial = all_metrics(c, as_of, 1);
        ASSERT_EQ(serial, all_metrics(c, as_of, 4));
        for (const MetricRow& row : serial) {
            const AuthorIdx a = c.author(row.author);
            ASSERT_EQ(row.soc_h, social_h_index(c, a, as_of));
            ASSERT_EQ(row.h, h_core(c, a, as_of).h);
            const BasicStats s = basic_stats(c, a, as_of);
            ASSERT_EQ((BasicStats{row.paper_count, row.citation_sum, row.distinct_coauthors}), s);
            ASSERT_GE(row.paper_count, 1);
            ASSERT_GE(row.soc_h, 0);
        }
    }
}

TEST(Conservation, Examples) {
    EXPECT_EQ(verify_conservation(Corpus::from_records(fixture_f1())), Rational(0));
    EXPECT_EQ(verify_conservation(Corpus{}), Rational(0));
}

TEST(Conservation, RandomCorporaAndSnapshots) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const Corpus c = Corpus::from_records(testing::random_records(rng));
        ASSERT_EQ(verify_conservation(c), Rational(0));
        ASSERT_EQ(verify_conservation(c, 1990 + trial % 25), Rational(0));
    }
}

TEST(ContribProperty, PerAuthorTotalEqualsH) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const Corpus c = Corpus::from_records(testing::random_records(rng));
        for (std::size_t a = 0; a < c.author_count(); ++a) {
            const AuthorIdx ai{static_cast<std::uint32_t>(a)};
            Rational sum(0);
            for (PaperIdx p : c.papers_of(ai)) {
                sum += contrib(c, p, ai);
            }
            ASSERT_EQ(sum, Rational(h_core(c, ai).h));
        }
    }
}

TEST(HCoreProperty, Invariants) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Corpus c = Corpus::from_records(testing::random_records(rng));
        for (std::size_t a = 0; a < c.author_count(); ++a) {
            const HCore core = h_core(c, AuthorIdx(static_cast<std::uint32_t>(a)));
            if (core.h == 0) {
                ASSERT_TRUE(core.supporting.empty());
                continue;
            }
            ASSERT_GE(static_cast<Count>(core.supporting.size()), core.h);
            for (PaperIdx p : core.supporting) {
                ASSERT_GE(c.paper(p).citations_as_of(unbounded), core.h);
            }
        }
    }
}

TEST(SocialHIndex, MatchesLiteralOracle) {
    std::mt19937_64 rng(37);
    testing::RandomCorpusShape shape;
    shape.max_papers = 50;
    shape.max_authors = 15;
    for (int trial = 0; trial < 150; ++trial) {
        const auto records = testing::random_records(rng, shape);
        const Corpus c = Corpus::from_records(records);
        const std::optional<Year> as_of =
            trial % 3 == 0 ? std::optional<Year>(1995 + trial % 15) : std::nullopt;
        for (const std::string& a : oracle::authors(records, as_of)) {
            ASSERT_TRUE(oracle::equal(social_h_index(c, a, as_of),
                                      oracle::social_h_index(records, a, as_of)))
                << "author " << a << " trial " << trial;
        }
    }
}

TEST(HMonotonicity, AddingCitationsNeverLowersH) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto records = testing::random_records(rng);
        if (records.empty()) {
            continue;
        }
        const Corpus before = Corpus::from_records(records);
        auto& target = records[std::uniform_int_distribution<std::size_t>(
            0, records.size() - 1)(rng)];
        target.citations[target.year + 1] += 1;
        const Corpus after = Corpus::from_records(records);
        for (const std::string& name : before.author_names()) {
            ASSERT_GE(h_core(after, name).h, h_core(before, name).h);
        }
    }
}

TEST(SocHNonMonotonicity, AddingCitationsCanLowerSocH) {
    // X keeps h = 2. Lifting Y's solo papers to h(Y) = 6 pushes the joint
    // paper out of H(Y) and X loses the half share Y contributed.
    auto records = testing::fixture_f1();
    const Rational before = social_h_index(Corpus::from_records(records), "X");
    for (int i = 0; i < 5; ++i) {
        records.push_back(paper("y" + std::to_string(i), {"Y"}, 2000, {{2001, 10}}));
    }
    records[2].citations[2001] = 10; // p3
    const Rational after = social_h_index(Corpus::from_records(records), "X");
    EXPECT_EQ(before, Rational(7, 4));
    EXPECT_EQ(after, Rational(3, 2));
    EXPECT_LT(after, before);
}

TEST(RationalFormatting, DecimalAndRounding) {
    EXPECT_EQ(to_decimal(Rational(7, 4)), "1.75");
    EXPECT_EQ(to_decimal(Rational(5, 4)), "1.25");
    EXPECT_EQ(to_decimal(Rational(1, 3)), "0.333333");
    EXPECT_EQ(to_decimal(Rational(2, 3)), "0.666667");
    EXPECT_EQ(to_decimal(Rational(2)), "2");
    EXPECT_EQ(to_decimal(Rational(0)), "0");
    EXPECT_EQ(to_decimal(Rational(-1, 4)), "-0.25");
    EXPECT_EQ(round_half_up(Rational(7, 4)), 2);
    EXPECT_EQ(round_half_up(Rational(3, 2)), 2);
    EXPECT_EQ(round_half_up(Rational(5, 4)), 1);
    EXPECT_EQ(round_half_up(Rational(-3, 2)), -1);
    EXPECT_EQ(to_fraction_string(Rational(7, 4)), "7/4");
    EXPECT_EQ(to_fraction_string(Rational(4, 2)), "2");
}

} // namespace
} // namespace socialh

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include <doctest.h>

#include <fstream>

#include "fakta/error.hpp"
#include "fakta/sources.hpp"
#include "support.hpp"

using namespace fakta;

namespace {

const char* kRegistry =
    "domain,reliability\n"
    "example-news.com,high\n"
    "en.wikipedia.org,wikipedia\n"
    "rumors.example,low\n"
    "middle.example,mixed\n";

Query query_of(std::vector<std::string> terms) {
  Query q;
  q.terms = std::move(terms);
  q.origins.assign(q.terms.size(), TermOrigin::ContentWord);
  return q;
}

void write_fixture(const std::filesystem::path& dir, const std::vector<std::string>& terms,
                   const std::string& lines) {
  std::ofstream(dir / (StubSearchProvider::query_fixture_key(terms) + ".jsonl")) << lines;
}

class ThrowingProvider : public ExternalSearchProvider {
 public:
  std::vector<ExternalHit> search(const std::vector<std::string>&, const std::vector<std::string>&,
                                  std::size_t) override {
    throw Error("timed out");
  }
};

}  // namespace

TEST_CASE("load_registry: examples") {
  const auto reg = SourceRegistry::parse(kRegistry);
  CHECK(reg.lookup_host("example-news.com") == Reliability::High);
  CHECK(reg.lookup_host("en.wikipedia.org") == Reliability::Wikipedia);
  CHECK(reg.size() == 4);
  try {
    SourceRegistry::parse("domain,reliability\nok.com,high\nfoo.com,bogus\n", "reg.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("load_registry: duplicate domain, last wins with a warning") {
  std::vector<std::string> warnings;
  const auto reg = SourceRegistry::parse("domain,reliability\na.com,high\na.com,low\n", "r", &warnings);
  CHECK(reg.lookup_host("a.com") == Reliability::Low);
  CHECK(warnings.size() == 1);
}

TEST_CASE("load_registry: shipped fixture") {
  const auto reg = SourceRegistry::load(test::data_dir() / "registry.csv");
  CHECK(reg.size() == 30);
  for (auto r : kAllChannels) CHECK(!reg.domains(r).empty());
}

TEST_CASE("classify_domain: examples") {
  const auto reg = SourceRegistry::parse(kRegistry);
  CHECK(classify_domain(reg, "https://news.example-news.com/a") == Reliability::High);
  CHECK(classify_domain(reg, "https://EN.Wikipedia.org/wiki/X") == Reliability::Wikipedia);
  CHECK_FALSE(classify_domain(reg, "https://unregistered.org/x").has_value());
  CHECK_FALSE(classify_domain(reg, "https://notexample-news.com/").has_value());
  CHECK_THROWS_AS(classify_domain(reg, "not a url"), InvalidUrl);
  CHECK_THROWS_AS(classify_domain(reg, "http:///path"), InvalidUrl);
}

TEST_CASE("host_of") {
  CHECK(host_of("https://user@Sub.Example.com:8080/p?q#f") == "sub.example.com");
  CHECK(host_of("example.com") == "example.com");
  CHECK_THROWS_AS(host_of("localhost"), InvalidUrl);
}

TEST_CASE("external_search: reciprocal rank and whitelist") {
  const auto reg = SourceRegistry::parse(kRegistry);
  const auto dir = test::scratch_dir("stub-basic");
  write_fixture(dir, {"eiffel", "tower"},
                R"({"url":"https://example-news.com/1","title":"One","body":"b1"}
{"url":"https://www.example-news.com/2","title":"Two","body":"b2"}
{"url":"https://rumors.example/3","title":"Off-class","body":"b3"}
{"url":"https://news.example-news.com/4","title":"Four","body":"b4"}
)");
  StubSearchProvider stub(dir);
  const auto docs = external_search(stub, reg, query_of({"eiffel", "tower"}), Reliability::High, 10);
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].hit.score_init == 1.0);
  CHECK(docs[1].hit.score_init == 0.5);
  CHECK(docs[2].hit.score_init == doctest::Approx(0.25));
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(docs[i].hit.rank == i + 1);
    CHECK(classify_domain(reg, docs[i].record.doc_id) == Reliability::High);
    if (i > 0) CHECK(docs[i].hit.score_init < docs[i - 1].hit.score_init);
  }
  CHECK(external_search(stub, reg, query_of({"eiffel", "tower"}), Reliability::High, 1).size() == 1);
  CHECK(external_search(stub, reg, query_of({"nothing"}), Reliability::High, 5).empty());
}

TEST_CASE("external_search: first three results give 1, 1/2, 1/3") {
  const auto reg = SourceRegistry::parse(kRegistry);
  const auto dir = test::scratch_dir("stub-three");
  write_fixture(dir, {"x"},
                R"({"url":"https://rumors.example/a","title":"A","body":"a"}
{"url":"https://rumors.example/b","title":"B","body":"b"}
{"url":"https://rumors.example/c","title":"C","body":"c"}
)");
  StubSearchProvider stub(dir);
  const auto docs = external_search(stub, reg, query_of({"x"}), Reliability::Low, 5);
  REQUIRE(docs.size() == 3);
  CHECK(docs[2].hit.score_init == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("external_search: provider failure carries the channel") {
  const auto reg = SourceRegistry::parse(kRegistry);
  ThrowingProvider bad;
  try {
    external_search(bad, reg, query_of({"x"}), Reliability::Low, 5);
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(e.channel() == Reliability::Low);
  }
  const auto dir = test::scratch_dir("stub-error");
  write_fixture(dir, {"y"}, "{\"error\":\"timeout\"}\n");
  StubSearchProvider stub(dir);
  CHECK_THROWS_AS(external_search(stub, reg, query_of({"y"}), Reliability::Mixed, 5), ProviderError);
}

TEST_CASE("HttpSearchProvider: rejects non-http endpoints") {
  CHECK_THROWS_AS(HttpSearchProvider({"https://api.example.com/search", "", false, 1}), ArgumentError);
  CHECK_NOTHROW(HttpSearchProvider({"http://127.0.0.1:9/search", "k", false, 1}));
}

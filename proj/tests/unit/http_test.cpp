#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "kre/http_server.hpp"
#include "test_data.hpp"

using nlohmann::json;

namespace {

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.listen(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

  kre::Service service_{std::make_shared<kre::Corpus>(testsupport::fixture_corpus())};
  kre::HttpServer server_{service_};
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_F(HttpTest, Info) {
  auto c = client();
  const auto r = c.Get("/api/info");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_EQ(json::parse(r->body).at("record_count"), 500);
}

TEST_F(HttpTest, MatrixMatchesServiceBytes) {
  auto c = client();
  const std::string body = R"({"node_count":12,"sort":{"key":"alphabetical","direction":"ascending"}})";
  const auto r = c.Post("/api/matrix", body, "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body, service_.matrix(body));
  const auto again = c.Post("/api/matrix", body, "application/json");
  EXPECT_EQ(again->body, r->body);
}

TEST_F(HttpTest, TimelineAndTweets) {
  auto c = client();
  const auto t = c.Post("/api/timeline", R"({"mode":"discrete"})", "application/json");
  ASSERT_TRUE(t);
  EXPECT_EQ(json::parse(t->body).at("views").size(), 6u);
  const auto w = c.Post("/api/tweets", R"({"target":"all","limit":3})", "application/json");
  ASSERT_TRUE(w);
  const auto j = json::parse(w->body);
  EXPECT_EQ(j.at("total"), 500);
  EXPECT_EQ(j.at("items").size(), 3u);
}

TEST_F(HttpTest, ErrorsAreJson) {
  auto c = client();
  const auto bad = c.Post("/api/matrix", R"({"pct_range":[90,10]})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(json::parse(bad->body).at("violations")[0].at("field"), "pct_range");
  const auto missing = c.Get("/api/unknown");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  const auto wrong = c.Get("/api/matrix");
  ASSERT_TRUE(wrong);
  EXPECT_EQ(wrong->status, 405);
  const auto pre = c.Options("/api/matrix");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
}

TEST_F(HttpTest, ConcurrentClientsGetIdenticalBodies) {
  const std::string expected = service_.matrix("{}");
  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      auto c = client();
      for (int k = 0; k < 5; ++k) {
        const auto r = c.Post("/api/matrix", "{}", "application/json");
        if (!r || r->body != expected) ++mismatches;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(mismatches, 0);
}

TEST(HttpBind, PortInUseIsBindError) {
  const kre::Service service(std::make_shared<kre::Corpus>());
  kre::HttpServer first(service);
  const int port = first.bind("127.0.0.1", 0);
  kre::HttpServer second(service);
  EXPECT_THROW(second.bind("127.0.0.1", port), kre::BindError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <bcn/bcn.h>

namespace {

std::string fx(const char* name) { return std::string(FIXTURE_DIR "/") + name; }

struct NetHandle {
    bcn_network* net = nullptr;
    explicit NetHandle(const std::string& path) {
        REQUIRE(bcn_network_load_file(path.c_str(), &net) == 0);
    }
    ~NetHandle() { bcn_network_free(net); }
};

std::string runOk(bcn_network* net, const char* cmd, const char* options, int wantRc) {
    char* report = nullptr;
    int rc = bcn_run(net, cmd, options, &report);
    CHECK(rc == wantRc);
    REQUIRE(report != nullptr);
    std::string out(report);
    bcn_string_free(report);
    return out;
}

} // namespace

TEST_CASE("loading and dimension queries") {
    NetHandle h(fx("ex13.json"));
    int n = 0, m = 0, d = 0, t = 0, p = 0, s = 0;
    bcn_network_dims(h.net, &n, &m, &d, &t, &p, &s);
    CHECK(n == 3);
    CHECK(m == 2);
    CHECK(d == 1);
    CHECK(t == 0);
    CHECK(s == 2);
    bcn_network_dims(h.net, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr); // no crash

    bcn_network* bad = nullptr;
    CHECK(bcn_network_load_file("/no/such/file.json", &bad) == 2);
    CHECK(bad == nullptr);
    CHECK(std::strlen(bcn_last_error()) > 0);
    CHECK(bcn_network_load_string("not json", &bad) == 2);
    CHECK(bcn_network_load_string(nullptr, &bad) == 2);

    bcn_network* ok = nullptr;
    CHECK(bcn_network_load_string(
              R"({"name":"tiny","n":1,"L":{"rows":2,"cols":[2,1]}})", &ok) == 0);
    REQUIRE(ok != nullptr);
    bcn_network_free(ok);
    bcn_network_free(nullptr); // tolerated
}

TEST_CASE("running commands through the C surface") {
    NetHandle h(fx("ex13.json"));
    std::string info = runOk(h.net, "info", nullptr, 0);
    CHECK(info.find("\"command\": \"info\"") != std::string::npos);
    CHECK(info.find("\"n\": 3") != std::string::npos);

    std::string synth = runOk(h.net, "dd-synth", "{\"mode\":\"iteration\"}", 0);
    CHECK(synth.find("\"controller_count\": \"1024\"") != std::string::npos);
    CHECK(synth.find("\"feasible\": true") != std::string::npos);

    // Negative verdicts map to return code 1, with a report still produced.
    NetHandle ex9(fx("ex9.json"));
    std::string check = runOk(ex9.net, "dd-check", "{\"mode\":\"baseline\"}", 1);
    CHECK(check.find("\"verdict\": false") != std::string::npos);
    std::string eq = runOk(ex9.net, "dd-check", "{\"mode\":\"output-eq\"}", 0);
    CHECK(eq.find("\"verdict\": true") != std::string::npos);

    // Usage errors map to return code 2 and set the thread-local message.
    char* report = nullptr;
    CHECK(bcn_run(h.net, "no-such-command", nullptr, &report) == 2);
    CHECK(report == nullptr);
    CHECK(std::strlen(bcn_last_error()) > 0);
    CHECK(bcn_run(h.net, "dd-synth", "not json", &report) == 2);
    CHECK(bcn_run(nullptr, "info", nullptr, &report) == 2);
    CHECK(bcn_run(h.net, "verify", "{}", &report) == 2); // missing controller
}

TEST_CASE("report rendering") {
    NetHandle h(fx("ex7.json"));
    char* report = nullptr;
    REQUIRE(bcn_run(h.net, "info", "", &report) == 0);
    char* text = bcn_render_text(report);
    REQUIRE(text != nullptr);
    std::string rendered(text);
    CHECK(rendered.find("command: info") != std::string::npos);
    CHECK(rendered.find("L: d4[1 2 3 4 1 2 3 3 3 4 1 3 4 4 2 3]") != std::string::npos);
    bcn_string_free(text);
    bcn_string_free(report);

    // DOT payloads render verbatim.
    REQUIRE(bcn_run(h.net, "export-dot", "{\"graph\":\"layers\"}", &report) == 0);
    text = bcn_render_text(report);
    REQUIRE(text != nullptr);
    CHECK(std::string(text).rfind("digraph layers", 0) == 0);
    bcn_string_free(text);
    bcn_string_free(report);

    CHECK(bcn_render_text("not json") == nullptr);
    CHECK(bcn_render_text(nullptr) == nullptr);
}

TEST_CASE("reports are byte-stable across runs") {
    NetHandle h(fx("ex11.json"));
    std::string a = runOk(h.net, "ifd-synth", nullptr, 0);
    std::string b = runOk(h.net, "ifd-synth", nullptr, 0);
    CHECK(a == b);
    CHECK(a.find("\"controller_count\": \"128\"") != std::string::npos);
}

TEST_CASE("version string") {
    const char* v = bcn_version();
    REQUIRE(v != nullptr);
    CHECK(std::strlen(v) > 0);
}

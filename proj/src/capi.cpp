#include "bcn/bcn.h"

#include <cstring>
#include <string>

#include "commands.hpp"

namespace {

thread_local std::string lastError;

char* dupString(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fail(const std::string& msg) {
    lastError = msg;
    return 2;
}

} // namespace

struct bcn_network {
    bcn::Network net;
};

extern "C" {

int bcn_network_load_file(const char* path, bcn_network** out) {
    if (!path || !out) return fail("null argument");
    try {
        auto* h = new bcn_network{bcn::parseNetworkPath(path)};
        *out = h;
        lastError.clear();
        return 0;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

int bcn_network_load_string(const char* text, bcn_network** out) {
    if (!text || !out) return fail("null argument");
    try {
        auto* h = new bcn_network{bcn::parseNetworkString(text)};
        *out = h;
        lastError.clear();
        return 0;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

void bcn_network_free(bcn_network* net) { delete net; }

void bcn_network_dims(const bcn_network* net, int* n, int* m, int* d, int* t, int* p, int* s) {
    if (!net) return;
    if (n) *n = net->net.n;
    if (m) *m = net->net.m;
    if (d) *d = net->net.d;
    if (t) *t = net->net.t;
    if (p) *p = net->net.p;
    if (s) *s = net->net.s;
}

int bcn_run(const bcn_network* net, const char* command, const char* options_json,
            char** report_json) {
    if (!net || !command) return fail("null argument");
    try {
        nlohmann::json options = nlohmann::json::object();
        if (options_json && *options_json) options = nlohmann::json::parse(options_json);
        bcn::CommandResult res = bcn::runCommand(net->net, command, options);
        if (report_json) *report_json = dupString(res.report.dump(2));
        lastError.clear();
        return res.exitCode;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

char* bcn_render_text(const char* report_json) {
    if (!report_json) return nullptr;
    try {
        return dupString(bcn::renderText(nlohmann::json::parse(report_json)));
    } catch (const std::exception& e) {
        lastError = e.what();
        return nullptr;
    }
}

const char* bcn_last_error(void) { return lastError.c_str(); }

void bcn_string_free(char* s) { delete[] s; }

const char* bcn_version(void) { return "1.0.0"; }

} // extern "C"

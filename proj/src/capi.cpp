#include "charp/charp.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "charp/commands.hpp"

struct charp_ring {
  charp::RingFile file;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
int guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const charp::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CHARP_E_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CHARP_E_INTERNAL;
  }
}

int null_arg(const char* what) {
  last_error = std::string(what) + " is null";
  return CHARP_E_INPUT;
}

}  // namespace

extern "C" {

const char* charp_version(void) { return "1.0.0"; }

const char* charp_last_error(void) { return last_error.c_str(); }

int charp_ring_load(const char* path, charp_ring** out) {
  if (!path || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new charp_ring{charp::load_ring_file(path)};
    return CHARP_OK;
  });
}

int charp_ring_parse(const char* text, const char* name, charp_ring** out) {
  if (!text || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new charp_ring{charp::parse_ring_file(text, name ? name : "")};
    return CHARP_OK;
  });
}

void charp_ring_free(charp_ring* ring) { delete ring; }

const char* charp_ring_name(const charp_ring* ring) { return ring ? ring->file.name.c_str() : ""; }

int charp_run(const charp_ring* ring, const char* command, const char* options_json, char** report_json) {
  if (!ring) return null_arg("ring");
  if (!command || !report_json) return null_arg("argument");
  *report_json = nullptr;
  return guarded([&] {
    charp::Json opts = charp::Json::object();
    if (options_json && *options_json) {
      try {
        opts = charp::Json::parse(options_json);
      } catch (const charp::Json::exception& e) {
        throw charp::InvalidArgument(std::string("options are not valid JSON: ") + e.what());
      }
    }
    charp::Json rep = charp::run_command(ring->file, command, opts);
    *report_json = dup(rep.dump(2));
    if (!rep["passed"].get<bool>()) {
      last_error = "theorem check failed";
      return static_cast<int>(CHARP_E_THEOREM);
    }
    return static_cast<int>(CHARP_OK);
  });
}

int charp_report_csv(const char* report_json, char** csv) {
  if (!report_json || !csv) return null_arg("argument");
  *csv = nullptr;
  return guarded([&] {
    charp::Json rep;
    try {
      rep = charp::Json::parse(report_json);
    } catch (const charp::Json::exception& e) {
      throw charp::InvalidArgument(std::string("report is not valid JSON: ") + e.what());
    }
    *csv = dup(charp::report_to_csv(rep));
    return CHARP_OK;
  });
}

void charp_string_free(char* s) { std::free(s); }

int charp_set_limit(const char* name, uint64_t value) {
  if (!name) return null_arg("name");
  auto& l = charp::limits();
  std::string n = name;
  if (n == "budget")
    l.pair_budget = value;
  else if (n == "max_generators")
    l.max_generators = value;
  else if (n == "layer_bound")
    l.layer_bound = static_cast<int>(value);
  else if (n == "jobs")
    l.jobs = static_cast<int>(value == 0 ? 1 : value);
  else {
    last_error = "unknown limit '" + n + "'";
    return CHARP_E_INPUT;
  }
  last_error.clear();
  return CHARP_OK;
}

uint64_t charp_get_limit(const char* name) {
  if (!name) return 0;
  auto& l = charp::limits();
  std::string n = name;
  if (n == "budget") return l.pair_budget;
  if (n == "max_generators") return l.max_generators;
  if (n == "layer_bound") return static_cast<uint64_t>(l.layer_bound.load());
  if (n == "jobs") return static_cast<uint64_t>(l.jobs.load());
  return 0;
}

}  // extern "C"

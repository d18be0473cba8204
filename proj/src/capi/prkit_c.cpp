#include "prkit/prkit.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "prkit/colorings.hpp"
#include "prkit/errors.hpp"
#include "prkit/regularity.hpp"
#include "prkit/search.hpp"
#include "prkit/serialize.hpp"
#include "prkit/systems.hpp"

struct prk_system {
  prkit::SystemSpec spec;
};

struct prk_coloring {
  prkit::Coloring coloring;
};

namespace {

using prkit::Json;

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = dup_string(j.dump()); }

template <typename F>
prk_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const prkit::ParseError& e) {
    g_last_error = e.what();
    return PRK_ERR_PARSE;
  } catch (const prkit::DimensionError& e) {
    g_last_error = e.what();
    return PRK_ERR_DIMENSION;
  } catch (const prkit::CapacityError& e) {
    g_last_error = e.what();
    return PRK_ERR_CAPACITY;
  } catch (const prkit::DomainError& e) {
    g_last_error = e.what();
    return PRK_ERR_DOMAIN;
  } catch (const prkit::PreconditionError& e) {
    g_last_error = e.what();
    return PRK_ERR_PRECONDITION;
  } catch (const prkit::UnknownIdError& e) {
    g_last_error = e.what();
    return PRK_ERR_UNKNOWN_ID;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return PRK_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return PRK_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PRK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PRK_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

const prkit::FiniteMatrix& finite_of(const prk_system* s) {
  if (!s->spec.is_finite())
    throw prkit::PreconditionError("system '" + s->spec.id + "' is infinite; use a truncation");
  return s->spec.finite();
}

std::vector<std::string> labels_of(const prk_system* s) {
  if (!s->spec.labels.empty()) return s->spec.labels;
  if (s->spec.is_finite()) return prkit::default_labels(s->spec.finite().cols());
  return {};
}

Json row_sums_json(const prkit::RowSumProfile& p) {
  Json j;
  Json sums = Json::array();
  for (const auto& r : p.row_sums) sums.push_back(r.str());
  j["row_sums"] = std::move(sums);
  j["complete"] = p.complete;
  auto report = prkit::bounded_row_sums(p);
  j["bounded"] = report.bounded;
  j["bound"] = report.bound ? Json(report.bound->str()) : Json(nullptr);
  if (!report.bounded) {
    Json growth = Json::array();
    for (const auto& [row, sum] : report.growth_witness) growth.push_back(Json::array({row, sum.str()}));
    j["growth_witness"] = std::move(growth);
  }
  return j;
}

}  // namespace

extern "C" {

const char* prk_version(void) { return "0.1.0"; }

const char* prk_last_error(void) { return g_last_error.c_str(); }

const char* prk_status_name(prk_status s) {
  switch (s) {
    case PRK_OK: return "ok";
    case PRK_NOT_FOUND: return "not found";
    case PRK_ERR_PARSE: return "parse error";
    case PRK_ERR_DIMENSION: return "dimension error";
    case PRK_ERR_CAPACITY: return "capacity exceeded";
    case PRK_ERR_DOMAIN: return "domain error";
    case PRK_ERR_PRECONDITION: return "precondition violated";
    case PRK_ERR_UNKNOWN_ID: return "unknown id";
    case PRK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PRK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void prk_string_free(char* s) { std::free(s); }

prk_budget prk_default_budget(void) {
  prkit::SearchBudget b;
  return prk_budget{b.max_nodes, b.max_millis, b.N, b.H};
}

prk_status prk_system_open(const char* id, prk_system** out) {
  return guarded([&] {
    require(id && out, "null argument");
    *out = new prk_system{prkit::lookup_system(id)};
    return PRK_OK;
  });
}

prk_status prk_system_from_json(const char* matrix_json, prk_system** out) {
  return guarded([&] {
    require(matrix_json && out, "null argument");
    auto m = prkit::matrix_from_json(prkit::parse_json(matrix_json));
    const std::size_t cols = m.cols();
    *out = new prk_system{prkit::SystemSpec{"matrix", "user-supplied matrix", std::move(m),
                                            prkit::default_labels(cols)}};
    return PRK_OK;
  });
}

void prk_system_close(prk_system* s) { delete s; }

int prk_system_is_finite(const prk_system* s) { return s && s->spec.is_finite() ? 1 : 0; }

prk_status prk_system_describe(const prk_system* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    Json j;
    j["id"] = s->spec.id;
    j["description"] = s->spec.description;
    j["finite"] = s->spec.is_finite();
    if (s->spec.is_finite()) {
      j["labels"] = labels_of(s);
      j["matrix"] = prkit::matrix_to_json(s->spec.finite());
    } else {
      const auto& v = s->spec.infinite();
      j["name"] = v.name();
      j["blocks"] = v.blocks();
      Json rows = Json::array();
      for (std::uint64_t i = 0; i < 4; ++i) {
        Json row = Json::array();
        for (const auto& e : v.row(i)) row.push_back(Json::array({v.label(e.column), e.value.str()}));
        rows.push_back(std::move(row));
      }
      j["first_rows"] = std::move(rows);
    }
    emit(j, out);
    return PRK_OK;
  });
}

prk_status prk_system_ids(char** out) {
  return guarded([&] {
    require(out, "null argument");
    emit(Json(prkit::system_ids()), out);
    return PRK_OK;
  });
}

prk_status prk_check_cp(const prk_system* s, size_t max_columns, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    prkit::ColumnsPropertyOptions opts;
    if (max_columns) opts.max_columns = max_columns;
    auto cert = prkit::columns_property(finite_of(s), opts);
    if (!cert) {
      emit(Json(nullptr), out);
      return PRK_NOT_FOUND;
    }
    emit(prkit::certificate_to_json(*cert), out);
    return PRK_OK;
  });
}

prk_status prk_verify_certificate(const prk_system* s, const char* certificate_json) {
  return guarded([&] {
    require(s && certificate_json, "null argument");
    auto cert = prkit::certificate_from_json(prkit::parse_json(certificate_json));
    return prkit::verify_certificate(finite_of(s), cert) ? PRK_OK : PRK_NOT_FOUND;
  });
}

prk_status prk_zero_subset(const prk_system* s, uint64_t cols, size_t max_size, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    Json j;
    if (s->spec.is_finite()) {
      auto subset = prkit::zero_column_subset(s->spec.finite(), max_size);
      if (!subset) {
        emit(Json{{"subset", nullptr}}, out);
        return PRK_NOT_FOUND;
      }
      const auto labels = labels_of(s);
      Json names = Json::array();
      for (auto c : *subset) names.push_back(labels[c]);
      j["subset"] = *subset;
      j["labels"] = std::move(names);
    } else {
      const auto& v = s->spec.infinite();
      auto subset = prkit::zero_column_subset(v, cols ? cols : 64, max_size);
      if (!subset) {
        emit(Json{{"subset", nullptr}}, out);
        return PRK_NOT_FOUND;
      }
      Json refs = Json::array();
      Json names = Json::array();
      for (const auto& c : *subset) {
        refs.push_back(Json::array({c.block, c.index}));
        names.push_back(v.label(c));
      }
      j["subset"] = std::move(refs);
      j["labels"] = std::move(names);
    }
    emit(j, out);
    return PRK_OK;
  });
}

prk_status prk_row_sums(const prk_system* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    Json j;
    std::optional<std::uint64_t> prime;
    if (s->spec.is_finite()) {
      j = row_sums_json(prkit::row_sum_profile(s->spec.finite()));
      try {
        prime = prkit::smallest_admissible_prime(s->spec.finite());
      } catch (const prkit::PreconditionError&) {
      }
    } else {
      j = row_sums_json(prkit::row_sum_profile(s->spec.infinite()));
      try {
        prime = prkit::smallest_admissible_prime(s->spec.infinite());
      } catch (const prkit::PreconditionError&) {
      }
    }
    j["admissible_prime"] = prime ? Json(*prime) : Json(nullptr);
    emit(j, out);
    return PRK_OK;
  });
}

prk_status prk_extract_zero_subset(const prk_system* s, uint64_t q, const char* solution_json, char** out) {
  return guarded([&] {
    require(s && solution_json && out, "null argument");
    const Json parsed = prkit::parse_json(solution_json);
    if (!parsed.is_array()) throw prkit::ParseError("solution must be a JSON array");
    std::vector<mpz_class> x;
    for (const auto& v : parsed) {
      if (v.is_number_integer()) {
        x.emplace_back(std::to_string(v.get<long long>()));
      } else if (v.is_string()) {
        try {
          x.emplace_back(v.get<std::string>());
        } catch (const std::invalid_argument&) {
          throw prkit::ParseError("not an integer: " + v.get<std::string>());
        }
      } else {
        throw prkit::ParseError("solution entries must be integers");
      }
    }
    auto J = prkit::extract_zero_subset_from_solution(finite_of(s), q, x);
    emit(Json{{"q", q}, {"J", J}}, out);
    return PRK_OK;
  });
}

prk_status prk_coloring_open(const char* id, prk_coloring** out) {
  return guarded([&] {
    require(id && out, "null argument");
    *out = new prk_coloring{prkit::lookup_coloring(id)};
    return PRK_OK;
  });
}

prk_status prk_coloring_from_table(const size_t* colors, size_t n, size_t palette, prk_coloring** out) {
  return guarded([&] {
    require(colors && out && n > 0, "null or empty argument");
    *out = new prk_coloring{prkit::table_coloring(std::vector<std::size_t>(colors, colors + n), palette)};
    return PRK_OK;
  });
}

void prk_coloring_close(prk_coloring* c) { delete c; }

prk_status prk_coloring_eval(const prk_coloring* c, const char* value, uint64_t* color) {
  return guarded([&] {
    require(c && value && color, "null argument");
    *color = c->coloring(prkit::Rational::parse(value));
    return PRK_OK;
  });
}

prk_status prk_coloring_ids(char** out) {
  return guarded([&] {
    require(out, "null argument");
    emit(Json(prkit::coloring_ids()), out);
    return PRK_OK;
  });
}

prk_status prk_nu_csv(uint64_t t_max, char** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = dup_string(prkit::nu_tables_csv(t_max));
    return PRK_OK;
  });
}

prk_status prk_find_mono_solution(const prk_system* s, const prk_coloring* c, const prk_budget* b, int timing,
                                  char** out) {
  return guarded([&] {
    require(s && c && out, "null argument");
    prkit::SearchBudget budget;
    if (b) {
      require(b->max_nodes > 0 && b->max_millis > 0 && b->n > 0 && b->height > 0, "budgets must be positive");
      budget = prkit::SearchBudget{b->max_nodes, b->max_millis, b->n, b->height};
    }
    auto outcome = prkit::find_mono_solution(finite_of(s), c->coloring, budget);
    emit(prkit::outcome_to_json(outcome, labels_of(s), timing != 0), out);
    return PRK_OK;
  });
}

prk_status prk_forcing_number(const prk_system* s, unsigned k, uint64_t cap, unsigned threads, int timing,
                              char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    auto outcome = prkit::forcing_number(finite_of(s), k, cap, prkit::ForcingOptions{threads ? threads : 1});
    emit(prkit::outcome_to_json(outcome, labels_of(s), timing != 0), out);
    return PRK_OK;
  });
}

prk_status prk_solution_in_class(const prk_system* s, const int64_t* cls, size_t n, int distinct, char** out) {
  return guarded([&] {
    require(s && cls && out && n > 0, "null or empty argument");
    std::vector<std::int64_t> values(cls, cls + n);
    auto sol = prkit::solution_in_class(finite_of(s), values, distinct != 0);
    if (!sol) {
      emit(Json{{"assignment", nullptr}}, out);
      return PRK_NOT_FOUND;
    }
    const auto labels = labels_of(s);
    Json a = Json::object();
    for (std::size_t i = 0; i < sol->size(); ++i) a[labels[i]] = (*sol)[i];
    emit(Json{{"assignment", std::move(a)}}, out);
    return PRK_OK;
  });
}

prk_status prk_truncation_demo(unsigned m, unsigned k, uint64_t cap, unsigned threads, int timing, char** out) {
  return guarded([&] {
    require(out, "null argument");
    auto outcome = prkit::truncation_forcing_demo(m, k, cap, prkit::ForcingOptions{threads ? threads : 1});
    emit(prkit::outcome_to_json(outcome, prkit::sec2_truncation_labels(m), timing != 0), out);
    return PRK_OK;
  });
}

prk_status prk_blocking_search(const char* property, uint64_t bound, char** out) {
  return guarded([&] {
    require(property && out, "null argument");
    auto report = prkit::blocking_counterexample_search(prkit::parse_blocking_property(property), bound);
    emit(prkit::blocking_to_json(report), out);
    return PRK_OK;
  });
}

prk_status prk_sample_property(const char* property, uint64_t samples, uint64_t seed, char** out) {
  return guarded([&] {
    require(property && out, "null argument");
    emit(prkit::sample_to_json(prkit::sample_property(property, samples, seed)), out);
    return PRK_OK;
  });
}

}  // extern "C"

#pragma once

// Moment functional systems (v_1, ..., v_r), their Darboux shifts, and striped moment matrices.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mopfact/errors.hpp"
#include "mopfact/matrix.hpp"
#include "mopfact/scalar.hpp"

namespace mopfact {

/// Weights x^{a_j} (1-x)^b on (0,1).
struct JacobiPineiro {
  std::vector<Scalar> a;
  Scalar b;
};

/// Weights x^{a_j} e^{-x} on (0, inf).
struct LaguerreFirstKind {
  std::vector<Scalar> a;
};

/// User-supplied moment tables, one list per functional.
struct CustomMoments {
  std::vector<std::vector<Scalar>> moments;
};

/// A system of r functionals, normalised so every zeroth moment is 1.
class SystemSpec {
 public:
  using Kind = std::variant<JacobiPineiro, LaguerreFirstKind, CustomMoments>;

  static SystemSpec jacobi_pineiro(std::vector<Scalar> a, Scalar b) {
    if (a.empty()) throw InvalidSystem("Jacobi-Pineiro system needs at least one parameter a_j");
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (is_negative_integer(a[j]))
        throw DegenerateParameters("a_" + std::to_string(j + 1) + " = " + a[j].str() + " is a negative integer");
      if (is_negative_integer(a[j] + b + Scalar(1)))
        throw DegenerateParameters("a_" + std::to_string(j + 1) + "+b+1 = " + (a[j] + b + Scalar(1)).str() +
                                   " is a negative integer");
    }
    const std::size_t r = a.size();
    SystemSpec s(r, JacobiPineiro{std::move(a), std::move(b)});
    s.collect_integer_gap_warnings();
    return s;
  }

  static SystemSpec laguerre(std::vector<Scalar> a) {
    if (a.empty()) throw InvalidSystem("Laguerre system needs at least one parameter a_j");
    for (std::size_t j = 0; j < a.size(); ++j)
      if (is_negative_integer(a[j]))
        throw DegenerateParameters("a_" + std::to_string(j + 1) + " = " + a[j].str() + " is a negative integer");
    const std::size_t r = a.size();
    SystemSpec s(r, LaguerreFirstKind{std::move(a)});
    s.collect_integer_gap_warnings();
    return s;
  }

  /// Rescales each table so its zeroth moment is 1. Rejects empty tables and zero zeroth moments.
  static SystemSpec custom(std::vector<std::vector<Scalar>> moments) {
    if (moments.empty()) throw InvalidSystem("custom system needs at least one functional");
    for (std::size_t j = 0; j < moments.size(); ++j) {
      auto& row = moments[j];
      if (row.empty()) throw InvalidSystem("functional " + std::to_string(j + 1) + " has an empty moment table");
      if (row[0].is_zero())
        throw InvalidSystem("functional " + std::to_string(j + 1) + " has zero zeroth moment; cannot normalise");
      const Scalar m0 = row[0];
      for (auto& x : row) x /= m0;
    }
    const std::size_t r = moments.size();
    return SystemSpec(r, CustomMoments{std::move(moments)});
  }

  std::size_t r() const noexcept { return r_; }
  const Kind& kind() const noexcept { return kind_; }
  bool is_builtin() const noexcept { return !std::holds_alternative<CustomMoments>(kind_); }

  /// Non-fatal parameter diagnostics (e.g. a_i - a_j an integer).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// <v_j, x^n>, j in [1, r].
  Scalar moment(std::size_t j, std::size_t n) const {
    if (j < 1 || j > r_) throw Error("functional index " + std::to_string(j) + " outside [1, r]");
    return std::visit(
        [&](const auto& k) -> Scalar {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, JacobiPineiro>) {
            const Scalar& aj = k.a[j - 1];
            return pochhammer(aj + Scalar(1), n) / pochhammer(aj + k.b + Scalar(2), n);
          } else if constexpr (std::is_same_v<T, LaguerreFirstKind>) {
            return pochhammer(k.a[j - 1] + Scalar(1), n);
          } else {
            const auto& row = k.moments[j - 1];
            if (n >= row.size()) throw MomentTableExhausted(j, n);
            return row[n];
          }
        },
        kind_);
  }

  /// Number of moments available per functional for custom tables (shortest table); unbounded otherwise.
  std::size_t available_moments() const {
    if (const auto* c = std::get_if<CustomMoments>(&kind_)) {
      std::size_t n = c->moments.front().size();
      for (const auto& row : c->moments) n = std::min(n, row.size());
      return n;
    }
    return static_cast<std::size_t>(-1);
  }

 private:
  SystemSpec(std::size_t r, Kind kind) : r_(r), kind_(std::move(kind)) {}

  void collect_integer_gap_warnings() {
    const std::vector<Scalar>& a = std::visit(
        [](const auto& k) -> const std::vector<Scalar>& {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, CustomMoments>) {
            static const std::vector<Scalar> none;
            return none;
          } else {
            return k.a;
          }
        },
        kind_);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if ((a[i] - a[j]).is_integer())
          warnings_.push_back("a_" + std::to_string(i + 1) + " - a_" + std::to_string(j + 1) +
                              " is an integer; the multiple orthogonal polynomials may degenerate");
  }

  std::size_t r_ = 0;
  Kind kind_;
  std::vector<std::string> warnings_;
};

/// The Darboux-shifted system V^[j] = (v_{j+1}, ..., v_r, x v_1, ..., x v_j).
struct ShiftedSystem {
  const SystemSpec* base = nullptr;
  std::size_t j = 0;

  ShiftedSystem(const SystemSpec& spec, std::size_t shift) : base(&spec), j(shift) {
    if (shift > spec.r()) throw Error("Darboux shift index " + std::to_string(shift) + " exceeds r");
  }

  std::size_t r() const noexcept { return base->r(); }
};

/// <v^[j]_i, x^n>, i in [1, r].
inline Scalar shifted_moment(const ShiftedSystem& sys, std::size_t i, std::size_t n) {
  const std::size_t r = sys.r();
  if (i < 1 || i > r) throw Error("functional index " + std::to_string(i) + " outside [1, r]");
  if (i + sys.j <= r) return sys.base->moment(i + sys.j, n);
  return sys.base->moment(i + sys.j - r, n + 1);
}

/// Highest moment order touched by build_moment_matrix(sys, N), for any shift.
inline std::size_t required_moment_order(std::size_t r, std::size_t n) {
  if (n == 0) return 0;
  return (n - 1) + (n - 1) / r + 1;
}

/// N x N truncation of the striped moment matrix: entry (n, r k + q) = <v^[j]_{q+1}, x^{k+n}>.
inline Matrix build_moment_matrix(const ShiftedSystem& sys, std::size_t size) {
  const std::size_t r = sys.r();
  Matrix m(size, size);
  for (std::size_t n = 0; n < size; ++n)
    for (std::size_t col = 0; col < size; ++col) {
      const std::size_t k = col / r;
      const std::size_t q = col % r;
      m(n, col) = shifted_moment(sys, q + 1, k + n);
    }
  return m;
}

/// Parses the custom moment file format {"r": int, "moments": [["p/q", ...], ...]}.
inline SystemSpec parse_moment_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("r") || !doc.contains("moments"))
    throw ParseError("moment file must be an object with keys \"r\" and \"moments\"");
  const auto& r_node = doc.at("r");
  if (!r_node.is_number_integer() || r_node.get<long long>() < 1) throw ParseError("\"r\" must be a positive integer");
  const auto r = r_node.get<std::size_t>();
  const auto& rows = doc.at("moments");
  if (!rows.is_array() || rows.size() != r)
    throw ParseError("\"moments\" must be an array of exactly r = " + std::to_string(r) + " lists");
  std::vector<std::vector<Scalar>> tables;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("each moment table must be an array");
    std::vector<Scalar> t;
    for (const auto& tok : row) {
      if (tok.is_string()) {
        t.push_back(Scalar::parse(tok.get<std::string>()));
      } else if (tok.is_number_integer()) {
        t.push_back(Scalar::parse(tok.dump()));
      } else {
        throw ParseError("moments must be rational strings \"p/q\" or integers");
      }
    }
    tables.push_back(std::move(t));
  }
  return SystemSpec::custom(std::move(tables));
}

inline SystemSpec load_moment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open moment file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("moment file '" + path + "': " + e.what());
  }
  return parse_moment_json(doc);
}

}  // namespace mopfact

#include <algorithm>
#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/serialization.hpp"

namespace loewner::io {

std::string join_path(const std::string& base, const std::string& member) {
  return base.empty() ? member : base + "." + member;
}

std::string index_path(const std::string& base, std::size_t index) {
  return base + "[" + std::to_string(index) + "]";
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(to_json(c));
  return out;
}

Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const DomainSpec& domain) {
  return Json{{"kind", to_string(domain.kind())}, {"dimension", domain.dimension()}};
}

namespace {

Json complex_list(const std::vector<Complex>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

}  // namespace

Json to_json(const HerglotzFieldSpec& spec) {
  Json params;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RadialParams>) {
          params["A"] = to_json(p.A.matrix());
          if (p.center) params["a"] = to_json(*p.center);
        } else if constexpr (std::is_same_v<P, BerksonPortaParams>) {
          params["tau"] = to_json(p.tau);
          params["p"] = Json{{"num", complex_list(p.p.numerator())}, {"den", complex_list(p.p.denominator())}};
        } else if constexpr (std::is_same_v<P, BallDiagonalParams>) {
          Json lambdas = Json::array();
          for (const auto& l : p.lambdas) {
            lambdas.push_back(Json{{"breaks", l.breaks()}, {"values", complex_list(l.values())}});
          }
          params["lambdas"] = std::move(lambdas);
        } else {
          throw InvalidArgument("custom fields cannot be serialized");
        }
      },
      spec.params());
  Json order = spec.order().is_infinite() ? Json("inf") : Json(spec.order().d);
  return Json{{"domain", to_json(spec.domain())},
              {"kind", to_string(spec.kind())},
              {"params", std::move(params)},
              {"breakpoints", spec.breakpoints()},
              {"order", std::move(order)}};
}

double number_from_json(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, path + ": expected a finite number");
  return v;
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return Complex(number_from_json(j, path), 0.0);
  if (!j.is_array() || j.size() != 2) {
    throw SchemaError(path, path + ": expected a complex number [re, im]");
  }
  return Complex(number_from_json(j[0], index_path(path, 0)), number_from_json(j[1], index_path(path, 1)));
}

ComplexVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, path + ": expected a non-empty array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], index_path(path, k));
  }
  return v;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, path + ": expected an array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto row_path = index_path(path, r);
    if (!j[r].is_array() || j[r].size() != n) {
      throw SchemaError(row_path, row_path + ": expected a row of length " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], index_path(row_path, c));
    }
  }
  return m;
}

namespace {

const Json& member(const Json& j, const std::string& key, const std::string& base) {
  const auto path = join_path(base, key);
  if (!j.is_object()) throw SchemaError(base, (base.empty() ? "document" : base) + ": expected an object");
  if (!j.contains(key)) throw SchemaError(path, path + ": missing required member");
  return j.at(key);
}

std::vector<Complex> complex_list_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, path + ": expected a non-empty array");
  std::vector<Complex> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(complex_from_json(j[k], index_path(path, k)));
  return out;
}

std::vector<double> sorted_times_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, path + ": expected an array of times");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const double v = number_from_json(j[k], index_path(path, k));
    if (v < 0.0) throw SchemaError(path, path + ": times must be nonnegative");
    out.push_back(v);
  }
  if (!std::is_sorted(out.begin(), out.end())) throw SchemaError(path, path + ": must be sorted");
  return out;
}

}  // namespace

DomainSpec domain_from_json(const Json& j, const std::string& path) {
  const auto& kind_j = member(j, "kind", path);
  const auto kind_path = join_path(path, "kind");
  if (!kind_j.is_string()) throw SchemaError(kind_path, kind_path + ": expected a string");
  const auto name = kind_j.get<std::string>();
  DomainKind kind;
  if (name == "UnitDisc") kind = DomainKind::UnitDisc;
  else if (name == "UnitBall") kind = DomainKind::UnitBall;
  else if (name == "Polydisc") kind = DomainKind::Polydisc;
  else if (name == "FullSpace") kind = DomainKind::FullSpace;
  else throw SchemaError(kind_path, kind_path + ": unknown domain kind '" + name + "'");

  std::size_t dim = 1;
  if (j.contains("dimension")) {
    const auto dim_path = join_path(path, "dimension");
    const auto& d = j.at("dimension");
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw SchemaError(dim_path, dim_path + ": expected a positive integer");
    }
    dim = d.get<std::size_t>();
  } else if (kind != DomainKind::UnitDisc) {
    throw SchemaError(join_path(path, "dimension"), join_path(path, "dimension") + ": missing required member");
  }
  if (kind == DomainKind::UnitDisc && dim != 1) {
    throw SchemaError(join_path(path, "dimension"), join_path(path, "dimension") + ": UnitDisc has dimension 1");
  }
  return DomainSpec(kind, dim);
}

HerglotzFieldSpec field_from_json(const Json& j, const std::string& path) {
  const DomainSpec domain = domain_from_json(member(j, "domain", path), join_path(path, "domain"));
  const auto kind_path = join_path(path, "kind");
  const auto& kind_j = member(j, "kind", path);
  if (!kind_j.is_string()) throw SchemaError(kind_path, kind_path + ": expected a string");
  const auto kind = kind_j.get<std::string>();
  const auto params_path = join_path(path, "params");
  const Json& params = member(j, "params", path);
  if (!params.is_object()) throw SchemaError(params_path, params_path + ": expected an object");

  std::vector<double> breakpoints;
  if (j.contains("breakpoints")) breakpoints = sorted_times_from_json(j.at("breakpoints"), join_path(path, "breakpoints"));

  RegularityOrder order;
  if (j.contains("order")) {
    const auto order_path = join_path(path, "order");
    const auto& o = j.at("order");
    if (o.is_string() && o.get<std::string>() == "inf") {
      order.d = std::numeric_limits<double>::infinity();
    } else if (o.is_number() && o.get<double>() >= 1.0) {
      order.d = o.get<double>();
    } else {
      throw SchemaError(order_path, order_path + ": expected \"inf\" or a number >= 1");
    }
  }

  const std::size_t n = domain.dimension();
  auto build = [&]() -> HerglotzFieldSpec {
    if (kind == "Radial") {
      const auto a_path = join_path(params_path, "A");
      ComplexMatrix A = matrix_from_json(member(params, "A", params_path), a_path);
      if (static_cast<std::size_t>(A.rows()) != n) {
        throw SchemaError(a_path, a_path + ": operator dimension does not match the domain");
      }
      std::optional<ComplexVector> center;
      if (params.contains("a")) {
        const auto c_path = join_path(params_path, "a");
        center = vector_from_json(params.at("a"), c_path);
        if (static_cast<std::size_t>(center->size()) != n) {
          throw SchemaError(c_path, c_path + ": dimension does not match the domain");
        }
        if (!(center->norm() < 1.0)) throw SchemaError(c_path, c_path + ": Mobius parameter needs ||a|| < 1");
        if (!domain.is_ball_like()) throw SchemaError(c_path, c_path + ": centers need a disc or ball domain");
      }
      return HerglotzFieldSpec::radial(domain, LinearOperator(std::move(A)), std::move(center));
    }
    if (kind == "DiscBerksonPorta") {
      if (domain.kind() != DomainKind::UnitDisc) {
        throw SchemaError(join_path(path, "domain"), join_path(path, "domain") + ": Berkson-Porta fields live on UnitDisc");
      }
      const auto tau_path = join_path(params_path, "tau");
      const Complex tau = params.contains("tau") ? complex_from_json(params.at("tau"), tau_path) : Complex(0.0);
      if (!(std::abs(tau) <= 1.0)) throw SchemaError(tau_path, tau_path + ": needs |tau| <= 1");
      const auto p_path = join_path(params_path, "p");
      const Json& pj = member(params, "p", params_path);
      auto num = complex_list_from_json(member(pj, "num", p_path), join_path(p_path, "num"));
      std::vector<Complex> den{Complex(1.0)};
      if (pj.contains("den")) den = complex_list_from_json(pj.at("den"), join_path(p_path, "den"));
      try {
        return HerglotzFieldSpec::berkson_porta(tau, RationalFunction(std::move(num), std::move(den)));
      } catch (const InvalidArgument& e) {
        throw SchemaError(p_path, p_path + ": " + e.what());
      }
    }
    if (kind == "BallDiagonal") {
      const auto l_path = join_path(params_path, "lambdas");
      const Json& lj = member(params, "lambdas", params_path);
      if (!lj.is_array() || lj.size() != n) {
        throw SchemaError(l_path, l_path + ": expected one eigenvalue function per dimension");
      }
      std::vector<PiecewiseConstant> lambdas;
      for (std::size_t k = 0; k < lj.size(); ++k) {
        const auto e_path = index_path(l_path, k);
        if (lj[k].is_array() || lj[k].is_number()) {
          lambdas.push_back(PiecewiseConstant::constant(complex_from_json(lj[k], e_path)));
          continue;
        }
        std::vector<double> breaks;
        if (lj[k].contains("breaks")) breaks = sorted_times_from_json(lj[k].at("breaks"), join_path(e_path, "breaks"));
        auto values = complex_list_from_json(member(lj[k], "values", e_path), join_path(e_path, "values"));
        try {
          lambdas.emplace_back(std::move(breaks), std::move(values));
        } catch (const InvalidArgument& e) {
          throw SchemaError(e_path, e_path + ": " + e.what());
        }
      }
      return HerglotzFieldSpec::ball_diagonal(domain, std::move(lambdas));
    }
    if (kind == "Custom") throw SchemaError(kind_path, kind_path + ": Custom fields cannot be loaded from JSON");
    throw SchemaError(kind_path, kind_path + ": unknown field kind '" + kind + "'");
  };
  return build().with_breakpoints(std::move(breakpoints)).with_order(order);
}

}  // namespace loewner::io

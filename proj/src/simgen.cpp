#include "graphtest/simgen.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "graphtest/madd.hpp"
#include "graphtest/parallel.hpp"
#include "graphtest/rng.hpp"

namespace graphtest {

std::string_view to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::ex1: return "ex1";
    case ScenarioId::ex2: return "ex2";
    case ScenarioId::ex3: return "ex3";
    case ScenarioId::ex4: return "ex4";
    case ScenarioId::ex5: return "ex5";
    case ScenarioId::ex6: return "ex6";
    case ScenarioId::ex7: return "ex7";
  }
  return "?";
}

std::optional<ScenarioId> scenario_from_string(std::string_view s) {
  if (s == "ex1") return ScenarioId::ex1;
  if (s == "ex2") return ScenarioId::ex2;
  if (s == "ex3") return ScenarioId::ex3;
  if (s == "ex4") return ScenarioId::ex4;
  if (s == "ex5") return ScenarioId::ex5;
  if (s == "ex6") return ScenarioId::ex6;
  if (s == "ex7") return ScenarioId::ex7;
  return std::nullopt;
}

void Scenario::validate() const {
  if (dim < 1) throw std::invalid_argument("scenario: d >= 1 required");
  if (id == ScenarioId::ex1 && dim % 2 != 0) {
    throw std::invalid_argument("scenario ex1 requires even d (first d/2 coordinates)");
  }
  if (id == ScenarioId::ex3 && !(gamma > 0.0)) {
    throw std::invalid_argument("scenario ex3 requires gamma > 0");
  }
}

ScenarioTheory scenario_theory(const Scenario& sc) {
  ScenarioTheory th;
  switch (sc.id) {
    case ScenarioId::ex1:
      th = {true, 0.0, 1.5, 1.5};
      break;
    case ScenarioId::ex2:
      th = {true, 0.0, 5.0, 5.0};  // var t5(0,3) = 3 * 5/3
      break;
    case ScenarioId::ex3:
      th = {true, 0.04, 1.0, 1.0 / sc.gamma};
      break;
    case ScenarioId::ex4:
    case ScenarioId::ex5:
      // Mixtures: the per-observation component coin couples the
      // coordinates, so the concentration limits do not apply.
      th.available = false;
      break;
    case ScenarioId::ex6:
      th = {true, 0.0, 1.0, 1.0};  // sqrt(d)*log(d)/d -> 0
      break;
    case ScenarioId::ex7:
      th = {true, 0.0, 1.0, 1.0};  // var t3(0, 1/3) = (1/3) * 3
      break;
  }
  if (sc.null_mode) th.nu2 = 0.0, th.sigma_g2 = th.sigma_f2;
  return th;
}

namespace {

std::size_t signal_coords_sqrt(std::size_t d) {
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));
}

std::size_t signal_coords_pow23(std::size_t d) {
  return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(d), 2.0 / 3.0)));
}

void draw_row(const Scenario& sc, bool from_f, RngStream& rng, double* out) {
  const std::size_t d = sc.dim;
  switch (sc.id) {
    case ScenarioId::ex1: {
      // F: diag(1..1, 2..2); G: diag(2..2, 1..1).
      const std::size_t half = d / 2;
      for (std::size_t q = 0; q < d; ++q) {
        const bool low = from_f ? (q < half) : (q >= half);
        out[q] = (low ? 1.0 : std::sqrt(2.0)) * rng.next_normal();
      }
      break;
    }
    case ScenarioId::ex2: {
      if (from_f) {
        for (std::size_t q = 0; q < d; ++q) out[q] = std::sqrt(5.0) * rng.next_normal();
      } else {
        for (std::size_t q = 0; q < d; ++q) out[q] = std::sqrt(3.0) * rng.next_student_t(5);
      }
      break;
    }
    case ScenarioId::ex3: {
      if (from_f) {
        for (std::size_t q = 0; q < d; ++q) out[q] = rng.next_normal();
      } else {
        const double sd = 1.0 / std::sqrt(sc.gamma);
        for (std::size_t q = 0; q < d; ++q) out[q] = 0.2 + sd * rng.next_normal();
      }
      break;
    }
    case ScenarioId::ex4: {
      const bool first = rng.next_unit() < 0.5;
      const double sd = first ? 1.0 : 2.0;
      for (std::size_t q = 0; q < d; ++q) {
        double mu = first ? 0.3 : -0.3;
        if (!from_f && q % 2 == 1) mu = -mu;  // alternating-sign mean direction
        out[q] = mu + sd * rng.next_normal();
      }
      break;
    }
    case ScenarioId::ex5: {
      if (from_f) {
        for (std::size_t q = 0; q < d; ++q) out[q] = rng.next_uniform(-0.5, 0.5);
      } else {
        const double side = rng.next_unit() < 0.5 ? 0.9 : 1.1;
        for (std::size_t q = 0; q < d; ++q) out[q] = rng.next_uniform(-side / 2, side / 2);
      }
      break;
    }
    case ScenarioId::ex6: {
      const std::size_t s = signal_coords_sqrt(d);
      const double mu = std::sqrt(0.01 * std::log(static_cast<double>(d)));
      const double sd = std::sqrt(0.5 * std::log(static_cast<double>(d)));
      for (std::size_t q = 0; q < d; ++q) {
        if (!from_f && q < s) {
          out[q] = mu + sd * rng.next_normal();
        } else {
          out[q] = rng.next_normal();
        }
      }
      break;
    }
    case ScenarioId::ex7: {
      const std::size_t s = signal_coords_pow23(d);
      for (std::size_t q = 0; q < d; ++q) {
        if (!from_f && q < s) {
          out[q] = rng.next_student_t(3) / std::sqrt(3.0);  // t3(0, 1/3)
        } else {
          out[q] = rng.next_normal();
        }
      }
      break;
    }
  }
}

}  // namespace

LabeledSample generate(const Scenario& sc, std::size_t m, std::size_t n, std::uint64_t seed) {
  sc.validate();
  if (m < 1 || n < 1) throw std::invalid_argument("generate: m, n >= 1 required");
  LabeledSample out;
  out.pooled.m = m;
  out.pooled.n = n;
  out.pooled.dim = sc.dim;
  out.pooled.data.resize((m + n) * sc.dim);
  RngStream rng = RngStream::from(seed, 0x5347454eULL);  // sample-generation stream
  for (std::size_t i = 0; i < m + n; ++i) {
    const bool from_f = sc.null_mode || i < m;
    draw_row(sc, from_f, rng, out.pooled.data.data() + i * sc.dim);
  }
  out.labels = LabelVector::canonical(m, n);
  return out;
}

std::string to_string(const DissimSpec& d) {
  if (!d.madd) return std::string(to_string(d.base));
  switch (d.base) {
    case KernelFamily::euclid_scaled: return "rho0";
    case KernelFamily::lin: return "rho1";
    case KernelFamily::log1p: return "rho2";
    case KernelFamily::expneg: return "rho3";
  }
  return "?";
}

std::optional<DissimSpec> dissim_from_string(std::string_view s) {
  if (s == "rho0") return DissimSpec{KernelFamily::euclid_scaled, true};
  if (s == "rho1") return DissimSpec{KernelFamily::lin, true};
  if (s == "rho2") return DissimSpec{KernelFamily::log1p, true};
  if (s == "rho3") return DissimSpec{KernelFamily::expneg, true};
  if (auto k = kernel_from_string(s)) return DissimSpec{*k, false};
  return std::nullopt;
}

SquareMatrix dissimilarity_matrix(const PooledSample& z, const DissimSpec& spec) {
  DistanceMatrix base = pairwise_matrix(z, KernelSpec{spec.base});
  if (!spec.madd) return std::move(base.values);
  return madd_of(base.values);
}

PowerTable power_study(const Scenario& sc, std::size_t m, std::size_t n, const PowerGrid& grid,
                       const std::vector<TestVariant>& tests, const PermutationPlan& plan,
                       std::size_t reps, bool timing) {
  sc.validate();
  plan.validate();
  if (reps < 1) throw std::invalid_argument("power_study: reps >= 1 required");
  if (grid.values.empty()) throw std::invalid_argument("power_study: empty grid");
  if (tests.empty()) throw std::invalid_argument("power_study: no tests selected");

  PowerTable table;
  for (std::size_t g = 0; g < grid.values.size(); ++g) {
    Scenario point = sc;
    if (grid.kind == GridKind::dimension) {
      const double dv = grid.values[g];
      if (dv < 1 || dv != std::floor(dv)) {
        throw std::invalid_argument("power_study: d grid values must be positive integers");
      }
      point.dim = static_cast<std::size_t>(dv);
    } else {
      point.gamma = grid.values[g];
    }
    point.validate();

    const std::uint64_t grid_seed = derive_seed(plan.seed, g);
    const std::size_t nv = tests.size();
    std::vector<std::uint8_t> rejected(reps * nv, 0);
    std::vector<double> elapsed(reps * nv, 0.0);

    parallel_for(reps, [&](std::size_t r) {
      const std::uint64_t rep_seed = derive_seed(grid_seed, r);
      const LabeledSample sample = generate(point, m, n, rep_seed);

      // Base matrices and MADD matrices are shared across the variants of
      // this replication; their build time is split evenly among users.
      SquareMatrix mats[8];
      bool have[8] = {};
      double mat_seconds[8] = {};
      std::size_t users[8] = {};
      auto mat_slot = [](const DissimSpec& d) {
        return static_cast<std::size_t>(d.base) + (d.madd ? 4 : 0);
      };
      for (const TestVariant& tv : tests) ++users[mat_slot(tv.dissim)];

      for (std::size_t t = 0; t < nv; ++t) {
        const TestVariant& tv = tests[t];
        const std::size_t slot = mat_slot(tv.dissim);
        const auto t0 = std::chrono::steady_clock::now();
        if (!have[slot]) {
          mats[slot] = dissimilarity_matrix(sample.pooled, tv.dissim);
          have[slot] = true;
          mat_seconds[slot] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                  .count();
        }
        const auto t1 = std::chrono::steady_clock::now();
        TestOptions opt;
        opt.kind = tv.test;
        opt.k = tv.k;
        PermutationPlan rep_plan = plan;
        rep_plan.seed = derive_seed(rep_seed, 1 + t);
        const TestReport rep = run_test(mats[slot], opt, sample.labels, rep_plan, tv.method);
        rejected[r * nv + t] = rep.reject ? 1 : 0;
        elapsed[r * nv + t] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count() +
            mat_seconds[slot] / static_cast<double>(users[slot]);
      }
    });

    for (std::size_t t = 0; t < nv; ++t) {
      std::size_t hits = 0;
      double secs = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        hits += rejected[r * nv + t];
        secs += elapsed[r * nv + t];
      }
      const double p = static_cast<double>(hits) / static_cast<double>(reps);
      PowerRow row;
      row.scenario = sc.id;
      row.d = point.dim;
      row.gamma = point.gamma;
      row.test = std::string(to_string(tests[t].test));
      row.kernel = to_string(tests[t].dissim);
      row.reps = reps;
      row.power = p;
      row.se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
      row.seconds = timing ? secs : 0.0;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace graphtest

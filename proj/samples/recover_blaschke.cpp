// Synthesizes a four-pole Blaschke form, recovers its poles and prints the
// fit quality.

#include <cstdio>

#include "hardy/hardy.hpp"

int main() {
  using namespace std::complex_literals;
  const hardy::PoleTuple poles({0.6 + 0.2i, -0.3 + 0.5i, -0.4 - 0.4i, 0.2 - 0.7i});
  const hardy::BlaschkeModel truth(poles, {1.0, 0.5i, -0.7 + 0.2i, 0.3}, 0.0);
  const auto f = hardy::synthesize(truth, 1024);

  hardy::RunConfig cfg;
  cfg.degree = poles.size();
  const auto run = hardy::cafd_cgd_run(f, cfg.degree, cfg);

  for (const auto& a : run.model.tuple.poles()) std::printf("pole %+.6f %+.6fi\n", a.real(), a.imag());
  std::printf("refinement: %s after %zu iterations\n", std::string(hardy::to_string(run.cgd.status)).c_str(),
              run.cgd.iterations);
  std::printf("tuple distance %.3g\n", hardy::tuple_distance(run.model.tuple, poles));
  std::printf("relative L2 error %.3g\n", hardy::l2_relative_error(f, hardy::synthesize(run.model, 1024)));
}

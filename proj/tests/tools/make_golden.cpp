// Writes the golden N=4 time series by dense eigendecomposition. Run once and
// commit the output; test_experiment compares the Chebyshev pipeline against it.
//
//   make_golden tests/data/golden_n4.cfg > tests/data/golden_n4.csv

#include "decohere/experiment.hpp"
#include "decohere/oracle.hpp"

#include <iostream>

using namespace decohere;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_golden <config>\n";
        return 1;
    }
    const auto config = load_config(argv[1]);
    const auto seeds = derive_seeds(config.seed_base, 0);
    const auto spec = realization_spec(config, seeds);
    const auto psi0 = compose_initial(config.central_state, realization_bath_state(config, spec, seeds));
    const auto dense = densify(spec);
    const DenseEvolver evolver(dense.matrix);
    const Eigen::VectorXcd v0 =
        Eigen::Map<const Eigen::VectorXcd>(psi0.data(), static_cast<Eigen::Index>(psi0.dim()));
    const auto a = to_eigenbasis(central_product_amplitudes(config.central_state));

    TimeSeries series;
    for (double t : uniform_grid(config.t_max, config.sample_count)) {
        const Eigen::VectorXcd v = evolver.evolve(v0, t);
        StateVector s(psi0.n_spins(), std::vector<cplx>(v.data(), v.data() + v.size()));
        SeriesRecord r;
        r.t = t;
        r.rho = reduce(s);
        r.entropy = quadratic_entropy(r.rho);
        r.echo = loschmidt_echo(r.rho, free_central_rho0(a, config.J, t));
        r.energy = v.dot(dense.matrix * v).real();
        series.records.push_back(r);
    }
    write_csv(series, std::cout);
}

#include "jcsim/hamiltonian.hpp"

#include "jcsim/qubit.hpp"

#include <cmath>

namespace jcsim {

void ModelSpec::validate() const {
    if (lambda < 0.0)
        throw std::invalid_argument("ModelSpec: lambda must be >= 0");
    if (kerr_k < 0.0)
        throw std::invalid_argument("ModelSpec: kerr_k must be >= 0");
    if (!std::isfinite(omega) || !std::isfinite(nu) || !std::isfinite(jz) ||
        !std::isfinite(gd) || !std::isfinite(kerr_k))
        throw std::invalid_argument("ModelSpec: parameters must be finite");
    policy.validate();
}

namespace {

Matrix interaction_terms(const ModelSpec& spec, Index nf) {
    const Matrix i2 = qubit_identity();
    const Matrix a = annihilation(nf);
    const Matrix ad = a.adjoint();
    const Matrix idf = Matrix::Identity(nf, nf);

    Matrix h = spec.lambda * (tensor(sigma_minus(), i2, ad) + tensor(sigma_plus(), i2, a));
    h += spec.lambda * (tensor(i2, sigma_minus(), ad) + tensor(i2, sigma_plus(), a));
    if (spec.jz != 0.0)
        h += spec.jz * tensor(sigma_z(), sigma_z(), idf);
    if (spec.gd != 0.0)
        h += spec.gd * (tensor(sigma_plus(), sigma_minus(), idf) +
                        tensor(sigma_minus(), sigma_plus(), idf));
    if (spec.chi() != 0.0)
        h += spec.chi() * tensor(i2, i2, Matrix(ad * ad * a * a));
    return h;
}

}  // namespace

Matrix build(const ModelSpec& spec) {
    spec.validate();
    const Index nf = spec.policy.n_max;
    const Matrix i2 = qubit_identity();
    const Matrix idf = Matrix::Identity(nf, nf);

    Matrix h = interaction_terms(spec, nf);
    h += spec.omega * (tensor(sigma_z(), i2, idf) + tensor(i2, sigma_z(), idf));
    h += spec.nu * tensor(i2, i2, number_operator(nf));
    return h;
}

Matrix build_detuned(const ModelSpec& spec) {
    spec.validate();
    const Index nf = spec.policy.n_max;
    const Matrix i2 = qubit_identity();
    const Matrix idf = Matrix::Identity(nf, nf);
    const Matrix ground = sigma_minus() * sigma_plus();  // |g><g|

    Matrix h = interaction_terms(spec, nf);
    h += spec.delta() * (tensor(ground, i2, idf) + tensor(i2, ground, idf));
    return h;
}

Matrix build_single_atom(double lambda, Index field_dim) {
    if (lambda < 0.0)
        throw std::invalid_argument("build_single_atom: lambda must be >= 0");
    const Matrix a = annihilation(field_dim);
    return lambda * (tensor(sigma_minus(), Matrix(a.adjoint())) +
                     tensor(sigma_plus(), a));
}

Matrix excitation_number(Index field_dim) {
    const Matrix i2 = qubit_identity();
    const Matrix idf = Matrix::Identity(field_dim, field_dim);
    const Matrix excited = sigma_plus() * sigma_minus();  // |e><e|
    return tensor(i2, i2, number_operator(field_dim)) +
           tensor(excited, i2, idf) + tensor(i2, excited, idf);
}

}  // namespace jcsim

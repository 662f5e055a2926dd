#include "jcsim/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace jcsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Geometric photon-number probabilities of a thermal state (not normalized
/// over the truncated block).
RealVector thermal_probabilities(double nbar, Index dim) {
    RealVector p = RealVector::Zero(dim);
    if (nbar == 0.0) {
        p(0) = 1.0;
        return p;
    }
    const double ratio = nbar / (1.0 + nbar);
    double w = 1.0 / (1.0 + nbar);
    for (Index n = 0; n < dim; ++n) {
        p(n) = w;
        w *= ratio;
    }
    return p;
}

/// Analytic P(l) machinery for the squeezed coherent thermal state.
///
/// Follows the Glauber R-function form: P(l) = R(0,0) * sum over q of
/// binom(l,q)/q! * (|Yt|/(2 Xt))^q * Xt^l * |H_q(u)|^2, rewritten as
/// Xt^(l-q) (|Yt|/2)^q to stay finite at Xt = 0, and evaluated in log space
/// so terms survive l in the hundreds. The sign of Y is fixed to match the
/// exp(-zeta a^dag^2/2 + zeta* a^2/2) squeeze convention used by the state
/// constructors (the R-function literature uses the opposite sign);
/// arbitrated against the matrix-built state.
class PcdEvaluator {
  public:
    PcdEvaluator(const FieldParams& fp, HermiteArg arg) {
        const double r = fp.squeeze_r();
        const double sh = std::sinh(r), ch = std::cosh(r);
        const Complex z = fp.alpha();
        x_ = fp.nbar_th + (2.0 * fp.nbar_th + 1.0) * sh * sh;
        y_ = (2.0 * fp.nbar_th + 1.0) * std::polar(1.0, fp.phi) * sh * ch;
        const double den = (1.0 + x_) * (1.0 + x_) - std::norm(y_);
        log_r00_ = -0.5 * std::log(den) -
                   ((1.0 + x_) * std::norm(z) + (y_ * std::conj(z) * std::conj(z)).real()) / den;
        xt_ = (x_ * (1.0 + x_) - std::norm(y_)) / den;
        yt_ = y_ / den;
        zt_ = ((1.0 + x_) * z + y_ * std::conj(z)) / den;
        log_xt_ = xt_ > 0.0 ? std::log(xt_) : kNegInf;
        squeezed_ = std::abs(yt_) > 1e-300;
        if (squeezed_) {
            log_half_yt_ = std::log(std::abs(yt_) / 2.0);
            u_ = zt_ / std::sqrt(2.0 * (arg == HermiteArg::tilded ? yt_ : y_));
        } else {
            // Glauber-Lachs limit: the Hermite factor collapses to |Zt|^(2q).
            log_half_yt_ = kNegInf;
            u_ = 0.0;
        }
        log_h_.push_back(0.0);  // log |H_0| = 0
        h_prev_ = 1.0;
        h_cur_ = 2.0 * u_;
        h_scale_ = 0.0;
    }

    double probability(int l) {
        if (l < 0)
            throw std::invalid_argument("pcd_analytic: l must be >= 0");
        if (squeezed_)
            extend_hermite(l);
        // log of binom(l,q)/q! accumulated incrementally inside the loop.
        std::vector<double> terms;
        terms.reserve(l + 1);
        double log_binom = 0.0;
        const double log_zt2 =
            std::norm(zt_) > 0.0 ? std::log(std::norm(zt_)) : kNegInf;
        double log_wq = 0.0;  // q log|Zt|^2 - lgamma(q+1)   (GL branch)
        for (int q = 0; q <= l; ++q) {
            if (q > 0) {
                log_binom += std::log(static_cast<double>(l - q + 1) / q);
                log_wq += (squeezed_ ? log_half_yt_ : log_zt2) - std::log(static_cast<double>(q));
            }
            const int lq = l - q;
            double t = log_binom + log_wq;
            if (lq > 0) {
                if (log_xt_ == kNegInf)
                    continue;
                t += lq * log_xt_;
            }
            if (squeezed_) {
                if (log_h_[q] == kNegInf)
                    continue;
                t += 2.0 * log_h_[q];
            }
            if (t != kNegInf)
                terms.push_back(t);
        }
        if (terms.empty())
            return 0.0;
        const double m = *std::max_element(terms.begin(), terms.end());
        double s = 0.0;
        for (double t : terms)
            s += std::exp(t - m);
        const double p = std::exp(m + std::log(s) + log_r00_);
        if (!std::isfinite(p))
            throw NumericalError("pcd_analytic: overflow in Hermite recurrence");
        return p;
    }

  private:
    void extend_hermite(int q_max) {
        // Scaled three-term recurrence H_{q+1} = 2u H_q - 2q H_{q-1}; the
        // running rescale keeps magnitudes in double range while log_h_
        // records log |H_q|.
        while (static_cast<int>(log_h_.size()) <= q_max) {
            const int q = static_cast<int>(log_h_.size());  // about to record H_q
            if (q == 1) {
                log_h_.push_back(log_abs(h_cur_) + h_scale_);
                continue;
            }
            const Complex next = 2.0 * u_ * h_cur_ - 2.0 * (q - 1.0) * h_prev_;
            h_prev_ = h_cur_;
            h_cur_ = next;
            const double mag = std::max(std::abs(h_cur_), std::abs(h_prev_));
            if (mag > 1e140) {
                h_cur_ *= 1e-140;
                h_prev_ *= 1e-140;
                h_scale_ += 140.0 * std::log(10.0);
            }
            log_h_.push_back(log_abs(h_cur_) + h_scale_);
        }
    }

    static double log_abs(Complex v) {
        const double a = std::abs(v);
        return a > 0.0 ? std::log(a) : kNegInf;
    }

    double x_;
    Complex y_;
    double xt_;
    Complex yt_, zt_, u_;
    double log_r00_, log_xt_, log_half_yt_;
    bool squeezed_;
    std::vector<double> log_h_;
    Complex h_prev_, h_cur_;
    double h_scale_;
};

}  // namespace

Complex FieldParams::alpha() const { return std::polar(std::sqrt(nbar_c), alpha_phase); }

double FieldParams::squeeze_r() const { return std::asinh(std::sqrt(nbar_s)); }

Complex FieldParams::zeta() const { return std::polar(squeeze_r(), phi); }

void FieldParams::validate() const {
    if (nbar_c < 0.0 || nbar_s < 0.0 || nbar_th < 0.0)
        throw std::invalid_argument("FieldParams: mean photon numbers must be >= 0");
    if (!std::isfinite(nbar_c) || !std::isfinite(nbar_s) || !std::isfinite(nbar_th) ||
        !std::isfinite(phi) || !std::isfinite(alpha_phase))
        throw std::invalid_argument("FieldParams: parameters must be finite");
}

FieldState thermal_state(double nbar_th, const TruncationPolicy& policy) {
    policy.validate();
    if (nbar_th < 0.0)
        throw std::invalid_argument("thermal_state: nbar_th must be >= 0");
    const double ratio = nbar_th / (1.0 + nbar_th);
    TruncationPolicy used = policy;
    for (int n = policy.n_max; n <= policy.n_max_limit; n += 20) {
        const double tail = nbar_th == 0.0 ? 0.0 : std::pow(ratio, n);
        if (tail <= policy.tail_tol) {
            used.n_max = n;
            RealVector p = thermal_probabilities(nbar_th, n);
            p /= p.sum();
            Matrix rho = Matrix::Zero(n, n);
            rho.diagonal() = p.cast<Complex>();
            return FieldState{std::move(rho), used, FieldParams{0.0, 0.0, nbar_th, 0.0, 0.0}};
        }
    }
    throw TruncationError("thermal_state: tail mass exceeds tail_tol at n_max_limit");
}

FieldState scts_state(double nbar_c, double nbar_s, double nbar_th, double phi,
                      const TruncationPolicy& policy, double alpha_phase) {
    policy.validate();
    const FieldParams params{nbar_c, nbar_s, nbar_th, phi, alpha_phase};
    params.validate();

    // The analytic distribution selects the truncation cheaply; the state is
    // then matrix-built once at that size.
    PcdEvaluator pcd(params, HermiteArg::tilded);
    TruncationPolicy used = policy;
    double mass = 0.0;
    int level = 0;
    int chosen = -1;
    for (int n = policy.n_max; n <= policy.n_max_limit; n += 20) {
        for (; level < n; ++level)
            mass += pcd.probability(level);
        if (1.0 - mass <= policy.tail_tol) {
            chosen = n;
            break;
        }
    }
    if (chosen < 0)
        throw TruncationError("scts_state: tail mass exceeds tail_tol at n_max_limit");
    used.n_max = chosen;

    const Index dwork = used.workspace_dim();
    const Matrix squeeze_op = squeeze_full(params.zeta(), dwork);
    const Matrix displace_op = displacement_full(params.alpha(), dwork);
    Matrix rho_work = Matrix::Zero(dwork, dwork);
    rho_work.diagonal() = thermal_probabilities(nbar_th, dwork).cast<Complex>();
    rho_work = squeeze_op * rho_work * squeeze_op.adjoint();
    rho_work = displace_op * rho_work * displace_op.adjoint();
    Matrix rho = rho_work.topLeftCorner(chosen, chosen);

    const double retained = rho.trace().real();
    if (retained < 1.0 - policy.tail_tol - 1e-12)
        throw TruncationError("scts_state: constructed state violates the tail criterion");
    return FieldState{std::move(rho), used, params};
}

double pcd_analytic(int l, double nbar_c, double nbar_s, double nbar_th, double phi,
                    double alpha_phase, HermiteArg arg) {
    const FieldParams params{nbar_c, nbar_s, nbar_th, phi, alpha_phase};
    params.validate();
    PcdEvaluator pcd(params, arg);
    return pcd.probability(l);
}

Complex hermite(int q, Complex x) {
    if (q < 0)
        throw std::invalid_argument("hermite: order must be >= 0");
    if (q == 0)
        return 1.0;
    Complex hm = 1.0, h = 2.0 * x;
    for (int k = 1; k < q; ++k) {
        const Complex next = 2.0 * x * h - 2.0 * static_cast<double>(k) * hm;
        hm = h;
        h = next;
    }
    return h;
}

AtomPairState bell_atoms(double theta) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(1) = std::cos(theta);
    v(2) = std::sin(theta);
    return AtomPairState{v * v.adjoint(), AtomPairState::Kind::bell, theta};
}

AtomPairState werner_atoms(double eta) {
    if (eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("werner_atoms: eta must be in [0,1]");
    Eigen::Vector4cd singlet = Eigen::Vector4cd::Zero();
    singlet(1) = -1.0 / std::sqrt(2.0);
    singlet(2) = 1.0 / std::sqrt(2.0);
    Matrix4 rho = (1.0 - eta) * 0.25 * Matrix4::Identity() +
                  eta * (singlet * singlet.adjoint());
    return AtomPairState{rho, AtomPairState::Kind::werner, eta};
}

SystemState compose_initial(const AtomPairState& atoms, const FieldState& field) {
    return SystemState{tensor(Matrix(atoms.rho), field.rho), 0.0};
}

}  // namespace jcsim

#ifndef FLEXCHECK_SURFACE_GROUP_HPP
#define FLEXCHECK_SURFACE_GROUP_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "flexcheck/config.hpp"
#include "flexcheck/lie_algebra.hpp"
#include "flexcheck/linalg.hpp"

namespace flexcheck {

/// A generator or its inverse. Generators are numbered a_1, b_1, ..., a_g, b_g -> 0, 1, ..., 2g-1.
struct Letter {
    int generator = 0;
    bool inverse = false;
};

class SurfaceGroupPresentation {
public:
    explicit SurfaceGroupPresentation(int genus) : genus_(genus) {
        if (genus < 2) throw DomainError("surface group: genus must be at least 2 (got " + std::to_string(genus) + ")");
        for (int i = 0; i < genus; ++i) {
            const int a = 2 * i, b = 2 * i + 1;
            relator_.push_back({a, false});
            relator_.push_back({b, false});
            relator_.push_back({a, true});
            relator_.push_back({b, true});
        }
    }
    int genus() const noexcept { return genus_; }
    int generator_count() const noexcept { return 2 * genus_; }
    int euler_characteristic() const noexcept { return 2 - 2 * genus_; }
    const std::vector<Letter>& relator() const noexcept { return relator_; }
    std::string generator_name(int k) const {
        return std::string(k % 2 == 0 ? "a" : "b") + std::to_string(k / 2 + 1);
    }

private:
    int genus_;
    std::vector<Letter> relator_;
};

inline SurfaceGroupPresentation standard_presentation(int genus) { return SurfaceGroupPresentation(genus); }

/// Product of generator images along a word.
inline Eigen::MatrixXd word_product(const std::vector<Eigen::MatrixXd>& images, const std::vector<Letter>& word) {
    if (images.empty()) throw DomainError("word_product: no images");
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(images.front().rows(), images.front().cols());
    for (const Letter& l : word) {
        const Eigen::MatrixXd& a = images.at(static_cast<std::size_t>(l.generator));
        p = l.inverse ? Eigen::MatrixXd(p * a.inverse()) : Eigen::MatrixXd(p * a);
    }
    return p;
}

/// Generator images in a matrix group, with the relator checked.
class SurfaceRepresentation {
public:
    SurfaceRepresentation(SurfaceGroupPresentation presentation, std::vector<Eigen::MatrixXd> images,
                          ModelPtr model = nullptr, bool central_lift = false, double tol = 1e-8)
        : pres_(std::move(presentation)), images_(std::move(images)), model_(std::move(model)),
          central_lift_(central_lift) {
        if (static_cast<int>(images_.size()) != pres_.generator_count())
            throw DomainError("representation: expected " + std::to_string(pres_.generator_count()) +
                              " generator images, got " + std::to_string(images_.size()));
        const Eigen::Index n = images_.front().rows();
        for (const auto& a : images_) {
            if (a.rows() != n || a.cols() != n) throw DomainError("representation: image size mismatch");
            if (!a.allFinite()) throw DomainError("representation: non-finite image");
        }
        const Eigen::MatrixXd r = relator_product();
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
        residual_ = (r - id).cwiseAbs().maxCoeff();
        sign_ = 1;
        if (central_lift_) {
            const double neg = (r + id).cwiseAbs().maxCoeff();
            if (neg < residual_) {
                residual_ = neg;
                sign_ = -1;
            }
        }
        if (residual_ > tol)
            throw DomainError("representation: relator residual " + std::to_string(residual_) + " exceeds " +
                              std::to_string(tol));
        if (model_)
            for (const auto& a : images_)
                if (model_->group_relation_residual(a) > tol)
                    throw DomainError("representation: image violates the defining relation of " + model_->name());
    }

    const SurfaceGroupPresentation& presentation() const noexcept { return pres_; }
    int genus() const noexcept { return pres_.genus(); }
    const std::vector<Eigen::MatrixXd>& images() const noexcept { return images_; }
    const Eigen::MatrixXd& image(int k) const { return images_.at(static_cast<std::size_t>(k)); }
    const ModelPtr& model() const noexcept { return model_; }
    bool central_lift() const noexcept { return central_lift_; }
    /// +1 when the relator maps to the identity, -1 when it maps to minus the identity.
    int relator_sign() const noexcept { return sign_; }
    double relator_residual() const noexcept { return residual_; }
    Eigen::MatrixXd relator_product() const { return word_product(images_, pres_.relator()); }

    /// Apply a homomorphism entrywise to the generator images.
    SurfaceRepresentation compose(const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& f, ModelPtr target,
                                  bool central_lift, double tol = 1e-8) const {
        std::vector<Eigen::MatrixXd> out;
        out.reserve(images_.size());
        for (const auto& a : images_) out.push_back(f(a));
        return SurfaceRepresentation(pres_, std::move(out), std::move(target), central_lift, tol);
    }

    /// Conjugate every image by g.
    SurfaceRepresentation conjugated(const Eigen::MatrixXd& g, double tol = 1e-8) const {
        const Eigen::MatrixXd gi = g.inverse();
        return compose([&](const Eigen::MatrixXd& a) { return Eigen::MatrixXd(g * a * gi); }, model_, central_lift_,
                       tol);
    }

private:
    SurfaceGroupPresentation pres_;
    std::vector<Eigen::MatrixXd> images_;
    ModelPtr model_;
    bool central_lift_ = false;
    int sign_ = 1;
    double residual_ = 0.0;
};

namespace detail {

inline Eigen::Matrix2cd disk_rotation(double phi) {
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    r(0, 0) = std::polar(1.0, phi / 2);
    r(1, 1) = std::polar(1.0, -phi / 2);
    return r;
}

inline Eigen::Matrix2cd disk_translation(double d) {
    Eigen::Matrix2cd t;
    t << std::cosh(d / 2), std::sinh(d / 2), std::sinh(d / 2), std::cosh(d / 2);
    return t;
}

}  // namespace detail

/// Side pairings of the regular hyperbolic 4g-gon centred at 0 in the Poincare
/// disk, as SU(1,1) matrices. a_i maps side 4i+2 to side 4i, b_i maps side
/// 4i+1 to side 4i+3; the relator prod [a_i, b_i] is the identity.
inline std::vector<Eigen::Matrix2cd> fuchsian_su11(int genus) {
    if (genus < 2) throw DomainError("fuchsian: genus must be at least 2");
    const int n = 4 * genus;
    const double pi = std::numbers::pi;
    const double inradius = std::acosh(std::cos(pi / n) / std::sin(pi / n));
    auto midpoint = [&](int k) { return 2.0 * pi * k / n; };
    auto pairing = [&](int from, int to) -> Eigen::Matrix2cd {
        return detail::disk_rotation(midpoint(to) - pi) * detail::disk_translation(-2.0 * inradius) *
               detail::disk_rotation(-midpoint(from));
    };
    std::vector<Eigen::Matrix2cd> out;
    for (int i = 0; i < genus; ++i) {
        out.push_back(pairing(4 * i + 2, 4 * i));
        out.push_back(pairing(4 * i + 1, 4 * i + 3));
    }
    return out;
}

/// Cayley transform C with C^{-1} SU(1,1) C = SL(2,R).
inline Eigen::Matrix2cd cayley() {
    Eigen::Matrix2cd c;
    c << cplx(1, 0), cplx(0, 1), cplx(0, 1), cplx(1, 0);
    return c / std::sqrt(2.0);
}

/// The Fuchsian representation of the genus-g surface group in SL(2,R).
inline SurfaceRepresentation fuchsian(int genus, double tol = 1e-8) {
    const Eigen::Matrix2cd c = cayley(), ci = c.inverse();
    std::vector<Eigen::MatrixXd> images;
    for (const auto& m : fuchsian_su11(genus)) {
        const Eigen::Matrix2cd r = ci * m * c;
        if (r.imag().cwiseAbs().maxCoeff() > 1e-12) throw NumericalError("fuchsian: Cayley image is not real");
        images.push_back(r.real());
    }
    return SurfaceRepresentation(standard_presentation(genus), std::move(images),
                                 build_classical({Family::SlReal, 2, 0}), true, tol);
}

inline SurfaceRepresentation fuchsian_genus2() { return fuchsian(2); }

/// The adjoint image of g in SL(2,R) as an element of SO(2,1), in the basis
/// H = diag(1,-1), S = [[0,1],[1,0]], K = [[0,1],[-1,0]] with form diag(1,1,-1).
inline Eigen::MatrixXd sl2_to_so21(const Eigen::MatrixXd& g) {
    if (g.rows() != 2 || g.cols() != 2) throw DomainError("sl2_to_so21: expected a 2x2 matrix");
    std::array<Eigen::Matrix2d, 3> basis;
    basis[0] << 1, 0, 0, -1;
    basis[1] << 0, 1, 1, 0;
    basis[2] << 0, 1, -1, 0;
    const std::array<double, 3> sign{1.0, 1.0, -1.0};
    const Eigen::Matrix2d gi = g.inverse();
    Eigen::MatrixXd out(3, 3);
    for (int j = 0; j < 3; ++j) {
        const Eigen::Matrix2d img = g * basis[static_cast<std::size_t>(j)] * gi;
        for (int i = 0; i < 3; ++i)
            out(i, j) = sign[static_cast<std::size_t>(i)] * 0.5 * (img * basis[static_cast<std::size_t>(i)]).trace();
    }
    return out;
}

namespace detail {

/// Fox-calculus Jacobian of the relator for an action of the generators on V:
/// letter s at prefix p contributes +rho(p) to block s, s^{-1} contributes -rho(p) rho(s)^{-1}.
inline Eigen::MatrixXd fox_jacobian(const SurfaceGroupPresentation& pres, const std::vector<Eigen::MatrixXd>& act) {
    const Eigen::Index n = act.front().rows();
    const int gens = pres.generator_count();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n * gens);
    Eigen::MatrixXd prefix = Eigen::MatrixXd::Identity(n, n);
    for (const Letter& x : pres.relator()) {
        const Eigen::MatrixXd& a = act[static_cast<std::size_t>(x.generator)];
        auto block = l.middleCols(n * x.generator, n);
        if (!x.inverse) {
            block += prefix;
            prefix = prefix * a;
        } else {
            const Eigen::MatrixXd ai = a.inverse();
            block -= prefix * ai;
            prefix = prefix * ai;
        }
    }
    return l;
}

}  // namespace detail

/// Newton correction of near-representations: left perturbations A_s <- exp(d_s) A_s
/// with d_s in the model, solving the linearized relator equation in the minimum-norm sense.
inline SurfaceRepresentation correct_relator(const SurfaceGroupPresentation& pres, std::vector<Eigen::MatrixXd> images,
                                             const ModelPtr& model, int max_iter = 30, double target = 1e-13) {
    if (!model) throw DomainError("correct_relator: a model is required");
    const Eigen::Index n = images.front().rows();
    const Eigen::Index d = model->dim();
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::MatrixXd r = word_product(images, pres.relator());
        const double res = (r - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
        if (res <= target) break;
        std::vector<Eigen::MatrixXd> ads;
        for (const auto& a : images) ads.push_back(model->adjoint_action(a));
        const Eigen::MatrixXd l = detail::fox_jacobian(pres, ads);
        const Eigen::MatrixXd lg = r.log();
        const Eigen::VectorXd rhs = -model->coords(lg);
        const Eigen::VectorXd delta = l.completeOrthogonalDecomposition().solve(rhs);
        for (std::size_t s = 0; s < images.size(); ++s)
            images[s] = model->element(delta.segment(static_cast<Eigen::Index>(s) * d, d)).exp() * images[s];
    }
    return SurfaceRepresentation(pres, std::move(images), model, false);
}

/// Small random perturbation of a representation, pushed back onto the
/// representation variety by correct_relator.
inline SurfaceRepresentation perturbed(const SurfaceRepresentation& rep, double size, std::mt19937_64& rng) {
    if (!rep.model()) throw DomainError("perturbed: representation has no model");
    std::normal_distribution<double> nd;
    std::vector<Eigen::MatrixXd> images;
    for (const auto& a : rep.images()) {
        Eigen::VectorXd x(rep.model()->dim());
        for (auto& c : x) c = size * nd(rng);
        images.push_back(rep.model()->element(x).exp() * a);
    }
    return correct_relator(rep.presentation(), std::move(images), rep.model());
}

}  // namespace flexcheck

#endif  // FLEXCHECK_SURFACE_GROUP_HPP

#include "horolab/autofns.hpp"

#include "horolab/arith.hpp"
#include "horolab/compensated.hpp"
#include "horolab/errors.hpp"
#include "horolab/expsum.hpp"
#include "horolab/parallel.hpp"
#include "horolab/profiles.hpp"
#include "horolab/random.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numbers>

namespace horolab {

namespace {

bool is_zero(const FrequencyMatrix& m) {
    for (const auto& r : m)
        if (r[0] != 0 || r[1] != 0)
            return false;
    return true;
}

IntRow2 row_times(const IntRow2& r, const IntMatrix2& g) {
    return {r[0] * g.a + r[1] * g.c, r[0] * g.b + r[1] * g.d};
}

double frac_product(long long n, double x) {
    const double t = double(n) * x;
    return t - std::round(t);
}

/// tr(m0 tT^-1 t xi), reduced mod 1 term by term.
double phase_of(const FrequencyMatrix& m0, const IntMatrix2& T, const TorusMatrix& xi) {
    double ph = 0.0;
    for (std::size_t i = 0; i < m0.size(); ++i) {
        const long long n1 = m0[i][0] * T.d - m0[i][1] * T.b;
        const long long n2 = -m0[i][0] * T.c + m0[i][1] * T.a;
        ph += frac_product(n1, xi[i][0]) + frac_product(n2, xi[i][1]);
    }
    return ph;
}

CosetSpec gamma_n(long long N) { return make_coset(N, IntMatrix2::identity()); }

double inverse_norm(const Sl2Matrix& M) { return frobenius_norm(M); } // |M^-1| = |M| in SL(2,R)

} // namespace

double BumpProfile::operator()(const Sl2Matrix& M) const {
    const double t = (frobenius_norm_sq(M) - 2.0) / (rho0 * rho0 - 2.0);
    const double b = bump6(t);
    if (b == 0.0 || lambda == 0.0)
        return b;
    // cos theta from the bottom row (sin theta / sqrt v, cos theta / sqrt v).
    const double cos_theta = M.d / std::sqrt(M.c * M.c + M.d * M.d);
    return b * (1.0 + lambda * cos_theta);
}

double BumpProfile::haar_integral() const {
    return 2 * std::numbers::pi * std::numbers::pi * (rho0 * rho0 - 2.0) * (bump6_integral / 2.0);
}

void validate(const PoincareTestFn& f) {
    if (f.N < 1)
        throw DomainError("test function level N must be positive");
    if (f.k < 1 || f.m0.size() != std::size_t(f.k))
        throw DomainError("frequency matrix must have k rows");
    if (!(f.phi.rho0 * f.phi.rho0 > 2.0))
        throw DomainError("bump radius rho0 must exceed sqrt 2");
}

FrequencyMatrix act_frequency(const FrequencyMatrix& m, const IntMatrix2& T) {
    const IntMatrix2 tinv = T.inverse().transpose();
    FrequencyMatrix out;
    out.reserve(m.size());
    for (const auto& r : m)
        out.push_back(row_times(r, tinv));
    return out;
}

std::complex<double> evaluate_f(const PoincareTestFn& f, const TorusMatrix& xi, const Sl2Matrix& M) {
    if (xi.size() != std::size_t(f.k))
        throw DomainError("xi must have k rows");
    const bool zero_mode = is_zero(f.m0);
    CompensatedComplexSum sum;
    std::size_t count = 0;
    for_each_coset_matrix(gamma_n(f.N), f.phi.rho0, M, [&](const IntMatrix2& T) {
        if (++count > max_orbit_terms)
            throw ResourceGuard("evaluate_f: orbit ball exceeds 1e6 terms");
        const double w = f.phi(T * M);
        if (w == 0.0)
            return;
        if (zero_mode)
            sum += w;
        else
            sum += w * e(phase_of(f.m0, T, xi));
    });
    return sum.value();
}

std::complex<double> evaluate_f(const PoincareTestFn& f, const GroupElement& g) {
    return evaluate_f(f, g.xi(), g.M);
}

int exact_fourier_panels(const PoincareTestFn& f, const Sl2Matrix& M, const FrequencyMatrix& m) {
    long long m0max = 0, mmax = 0;
    for (const auto& r : f.m0)
        m0max = std::max(m0max, std::abs(r[0]) + std::abs(r[1]));
    for (const auto& r : m)
        mmax = std::max({mmax, std::abs(r[0]), std::abs(r[1])});
    const double entry = f.phi.rho0 * inverse_norm(M);
    return int(std::ceil(double(m0max) * entry)) + int(mmax) + 2;
}

namespace {

template <class Eval>
std::complex<double> torus_trapezoid(int k, int P, const FrequencyMatrix& m, Eval&& eval) {
    if (P < 1)
        throw DomainError("fourier panels must be positive");
    const int dims = 2 * k;
    long long total = 1;
    for (int i = 0; i < dims; ++i)
        total *= P;
    if (total > 50'000'000)
        throw ResourceGuard("fourier_coefficient: torus grid exceeds 5e7 points");
    CompensatedComplexSum sum;
    std::vector<int> idx(dims, 0);
    TorusMatrix xi(k, Row2{0, 0});
    for (long long n = 0; n < total; ++n) {
        double ph = 0.0;
        for (int i = 0; i < k; ++i) {
            xi[i] = {double(idx[2 * i]) / P, double(idx[2 * i + 1]) / P};
            ph += double(m[i][0] * idx[2 * i] + m[i][1] * idx[2 * i + 1]) / P;
        }
        sum += eval(xi) * e(-(ph - std::floor(ph)));
        for (int i = dims - 1; i >= 0; --i) {
            if (++idx[i] < P)
                break;
            idx[i] = 0;
        }
    }
    return sum.value() / double(total);
}

} // namespace

std::complex<double> fourier_coefficient(const PoincareTestFn& f, const Sl2Matrix& M, const FrequencyMatrix& m,
                                         int panels) {
    validate(f);
    if (m.size() != std::size_t(f.k))
        throw DomainError("frequency must have k rows");
    const int P = panels > 0 ? panels : exact_fourier_panels(f, M, m);
    return torus_trapezoid(f.k, P, m, [&](const TorusMatrix& xi) { return evaluate_f(f, xi, M); });
}

std::complex<double> fourier_coefficient_closed(const PoincareTestFn& f, const Sl2Matrix& M,
                                                const FrequencyMatrix& m) {
    CompensatedComplexSum sum;
    for_each_coset_matrix(gamma_n(f.N), f.phi.rho0, M, [&](const IntMatrix2& T) {
        if (act_frequency(f.m0, T) == m)
            sum += f.phi(T * M);
    });
    return sum.value();
}

std::complex<double> TwistedTestFn::evaluate(const TorusMatrix& xi, const Sl2Matrix& M) const {
    const Sl2Matrix Rr = Sl2Matrix::from_int(R);
    return evaluate_f(f, xi * Rr, Rr.inverse() * M);
}

std::complex<double> TwistedTestFn::evaluate(const GroupElement& g) const { return evaluate(g.xi(), g.M); }

std::complex<double> TwistedTestFn::fourier_coefficient(const Sl2Matrix& M, const FrequencyMatrix& m,
                                                        int panels) const {
    int P = panels;
    if (P <= 0) {
        const Sl2Matrix Rr = Sl2Matrix::from_int(R);
        P = exact_fourier_panels(f, Rr.inverse() * M, act_frequency(m, R)) +
            exact_fourier_panels(f, M, m);
    }
    return torus_trapezoid(f.k, P, m, [&](const TorusMatrix& xi) { return evaluate(xi, M); });
}

TwistedTestFn twist_fR(const PoincareTestFn& f, const IntMatrix2& R) {
    if (R.det() != 1)
        throw DomainError("twist requires det R = 1");
    return {f, R};
}

long long sl2_mod_order(long long N) {
    if (N < 1)
        throw DomainError("level N must be positive");
    long long order = N * N * N;
    long long n = N;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        while (n % p == 0)
            n /= p;
        order = order / (p * p) * (p * p - 1);
    }
    if (n > 1)
        order = order / (n * n) * (n * n - 1);
    return order;
}

std::vector<IntMatrix2> sl2_mod_representatives(long long N) {
    if (N < 1)
        throw DomainError("level N must be positive");
    auto key = [N](const IntMatrix2& m) {
        const auto r = m.mod(N);
        return std::array<long long, 4>{r.a, r.b, r.c, r.d};
    };
    std::map<std::array<long long, 4>, IntMatrix2> seen;
    std::deque<IntMatrix2> queue{IntMatrix2::identity()};
    seen.emplace(key(IntMatrix2::identity()), IntMatrix2::identity());
    const IntMatrix2 gens[] = {IntMatrix2::S(), IntMatrix2::u(1)};
    while (!queue.empty()) {
        const IntMatrix2 cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            const IntMatrix2 nxt = cur * g;
            if (seen.emplace(key(nxt), nxt).second)
                queue.push_back(nxt);
        }
    }
    std::vector<IntMatrix2> out;
    out.reserve(seen.size());
    for (const auto& [k, v] : seen)
        out.push_back(v);
    return out;
}

double covolume(long long N) { return double(sl2_mod_order(N)) * std::numbers::pi * std::numbers::pi / 3.0; }

std::complex<double> mean_value(const PoincareTestFn& f) {
    validate(f);
    if (!is_zero(f.m0))
        return 0.0;
    return f.phi.haar_integral() / covolume(f.N);
}

HaarSample haar_sample(const PoincareTestFn& f, std::uint64_t seed, std::uint64_t index) {
    static thread_local std::map<long long, std::vector<IntMatrix2>> reps_cache;
    auto it = reps_cache.find(f.N);
    if (it == reps_cache.end())
        it = reps_cache.emplace(f.N, sl2_mod_representatives(f.N)).first;
    const auto& reps = it->second;

    CounterRng rng(seed, index);
    const double v0 = std::sqrt(3.0) / 2.0;
    double u, v;
    do {
        v = v0 / (1.0 - rng.uniform());
        u = rng.uniform(-0.5, 0.5);
    } while (u * u + v * v < 1.0);
    const double theta = rng.uniform(0.0, 2 * std::numbers::pi);
    const auto& rep = reps[std::size_t(rng.integer(0, (long long)reps.size() - 1))];
    HaarSample s{rep * iwasawa_compose({u, v, theta}), TorusMatrix(f.k, Row2{0, 0})};
    for (auto& r : s.xi)
        r = {rng.uniform(), rng.uniform()};
    return s;
}

MonteCarloMean monte_carlo_mean(const PoincareTestFn& f, std::size_t samples, std::uint64_t seed, int jobs) {
    validate(f);
    if (samples < 2)
        throw DomainError("monte_carlo_mean needs at least two samples");
    std::vector<std::complex<double>> vals(samples);
    parallel_for(samples, jobs, [&](std::size_t i) {
        const auto s = haar_sample(f, seed, i);
        vals[i] = evaluate_f(f, s.xi, s.M);
    });
    CompensatedComplexSum sum;
    for (const auto& v : vals)
        sum += v;
    const auto mean = sum.value() / double(samples);
    CompensatedSum var;
    for (const auto& v : vals)
        var += std::norm(v - mean);
    MonteCarloMean out;
    out.mean = mean;
    out.samples = samples;
    out.standard_error = std::sqrt(var.value() / double(samples - 1) / double(samples));
    return out;
}

OrbitClass classify_orbit(const FrequencyMatrix& m) {
    OrbitClass out;
    out.canonical = m;
    std::size_t l1 = 0;
    while (l1 < m.size() && m[l1][0] == 0 && m[l1][1] == 0)
        ++l1;
    if (l1 == m.size())
        return out;

    long long s, t;
    const long long x = m[l1][0], y = m[l1][1];
    const long long g = ext_gcd(x, y, s, t);
    // (x, y) (s, -y/g; t, x/g) = (g, 0)
    IntMatrix2 gamma{s, -y / g, t, x / g};
    FrequencyMatrix cur;
    for (const auto& r : m)
        cur.push_back(row_times(r, gamma));

    std::size_t l2 = l1 + 1;
    while (l2 < cur.size() && cur[l2][1] == 0)
        ++l2;
    if (l2 == cur.size()) {
        out.tag = OrbitClass::Tag::A;
        out.canonical = cur;
        out.gamma = gamma;
        return out;
    }
    // The stabilizer of (g, 0) is (1, 0; n, 1); use it to reduce row l2 mod its second entry.
    const long long x2 = cur[l2][0], y2 = cur[l2][1];
    const long long span = std::abs(y2);
    const long long r = ((x2 % span) + span) % span;
    const IntMatrix2 shear{1, 0, (r - x2) / y2, 1};
    gamma = gamma * shear;
    for (auto& row : cur)
        row = row_times(row, shear);
    out.tag = OrbitClass::Tag::B;
    out.canonical = cur;
    out.gamma = gamma;
    return out;
}

} // namespace horolab

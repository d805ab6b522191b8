#ifndef CYCLICITY_GENTRIG_HPP
#define CYCLICITY_GENTRIG_HPP

#include <utility>
#include <vector>

namespace cyc {

// Euler Gamma for positive arguments (Lanczos approximation, relative error
// well below 1e-12 on the arguments used here).
double gamma_fn(double x);

// Cs/Sn pair: the solution of x' = -y, y' = x^(2n-1), x(0)=1, y(0)=0.
// One adaptive integration pass per n; dense output cached on a uniform
// grid with quintic Hermite interpolation.  Completed tables are immutable.
class GenTrigTable {
public:
    // Cached, built on first use; throws on n < 1 and when the Gamma-formula
    // period and the integrator's return time disagree beyond 1e-8.
    static const GenTrigTable& get(int n);

    int n() const { return n_; }
    // Stored period: the Gamma-formula value 2*sqrt(pi/n)*G(1/2n)/G((n+1)/2n).
    double period() const { return period_; }
    // First-return time to (1,0) measured on the integrated flow.
    double return_time() const { return return_time_; }
    double tolerance() const { return tol_; }

    // (Cs t, Sn t); t reduced modulo the stored period.
    std::pair<double, double> eval(double theta) const;

private:
    GenTrigTable(int n, double tol);
    int n_;
    double period_, return_time_, tol_, h_;
    std::vector<double> cs_, sn_, dcs_, dsn_, d2cs_, d2sn_;
};

inline std::pair<double, double> gen_trig(int n, double theta) {
    return GenTrigTable::get(n).eval(theta);
}

// Gamma-formula value, cross-validated against the return time within 1e-9;
// throws when the two disagree beyond 1e-8.
double period_tn(int n);

} // namespace cyc

#endif

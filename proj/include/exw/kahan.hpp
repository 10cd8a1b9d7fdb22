// kahan.hpp
// Compensated (Kahan) accumulation. Used wherever long series of gate
// times or squared magnitudes are summed; naive accumulation loses about
// three digits by n ~ 1e7.

#pragma once

namespace exw {

class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }

    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace exw

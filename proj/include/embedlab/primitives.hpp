#pragma once

#include <string>

#include <Eigen/Core>

#include "embedlab/probdist.hpp"

namespace embedlab {

// A catalog primitive: identifier, parameters and joint distribution.
struct PrimitiveSpec {
    std::string id;      // "rot/3", "ot/1", "sand", "otp/0.05"
    std::string family;  // "rot", "ot", "sand", "otp"
    int r = 0;           // string length (rot, ot); unused otherwise
    double p = 0.0;      // noise rate (otp); unused otherwise
    JointDistribution dist;
};

// Rabin OT of an r-bit random string: Bob receives x or "_bot", each with
// probability 1/2. X = {0,1}^r, Y = {0,1}^r + bottom. Requires 1 <= r <= 12.
PrimitiveSpec make_rot(int r);

// One-out-of-two r-bit string OT on uniform inputs: x-labels are the
// concatenation x0 x1, y-labels are "c:y" with y = x_c. Requires 1 <= r <= 6.
PrimitiveSpec make_ot(int r);

// Additive sharing of AND: x-labels "xa", y-labels "yb", uniform over the
// eight solutions of a XOR b = x AND y.
PrimitiveSpec make_sand();

// Noisy 1-2-OT of bits: the selected bit crosses a binary symmetric channel
// with error rate p in (0, 1/2).
PrimitiveSpec make_otp(double p);

// Parses "rot/3", "ot/1", "sand" or "otp/0.05", optionally prefixed with
// "primitive://". Malformed strings raise ParseError; bad parameter ranges
// raise ValidationError.
PrimitiveSpec make_primitive(const std::string& id);

struct RotClosedForm {
    Eigen::VectorXd spectrum;  // descending; one large eigenvalue, 2^r - 1 small
    double s_a = 0.0;          // entropy of either reduced state
    double delta = 0.0;        // s_a - r/2
};

// Closed-form reduced spectrum and leakage of any regular embedding of
// make_rot(r); the result is independent of the phase assignment.
RotClosedForm rot_leakage_closed(int r);

struct OtClosedForm {
    Eigen::VectorXd spectrum;  // descending, four entries
    double s_aprime = 0.0;
};

// Closed-form spectrum {(1 +- cos(omega/4))/4, (1 +- sin(omega/4))/4} and
// entropy of the one-parameter family of make_ot(1) embeddings; omega is
// folded into [0, 2*pi).
OtClosedForm ot_entropy_closed(double omega);

struct OtpBound {
    double value = 0.0;
    // False when p >= 1/2 - 1/(2*sqrt(2)), where the bound degenerates to 0.
    bool in_validity = true;
};

// Lower bound (1/2 - p - sqrt(p(1-p)))^2 / (32 ln 2) on the leakage of any
// strictly correct embedding of make_otp(p). Accepts p in [0, 1/2).
OtpBound otp_lower_bound(double p);

}  // namespace embedlab

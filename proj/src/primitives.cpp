#include "embedlab/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "embedlab/errors.hpp"

namespace embedlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string bits(Eigen::Index value, int width) {
    std::string s(static_cast<size_t>(width), '0');
    for (int k = 0; k < width; ++k)
        if ((value >> (width - 1 - k)) & 1) s[static_cast<size_t>(k)] = '1';
    return s;
}

std::vector<std::string> bit_labels(int width) {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(1) << width);
    for (Eigen::Index i = 0; i < (Eigen::Index(1) << width); ++i) out.push_back(bits(i, width));
    return out;
}

double binary_entropy(double q) {
    double h = 0.0;
    if (q > 1e-15) h -= q * std::log2(q);
    if (1.0 - q > 1e-15) h -= (1.0 - q) * std::log2(1.0 - q);
    return h;
}

std::string format_p(double p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

}  // namespace

PrimitiveSpec make_rot(int r) {
    if (r < 1 || r > 12)
        throw ValidationError("make_rot: r must be in [1, 12], got " + std::to_string(r));
    const Eigen::Index m = Eigen::Index(1) << r;
    std::vector<std::string> ys = bit_labels(r);
    ys.push_back(Alphabet::kBottom);
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(m, m + 1);
    const double mass = std::ldexp(1.0, -(r + 1));
    for (Eigen::Index x = 0; x < m; ++x) {
        table(x, x) = mass;  // y = x
        table(x, m) = mass;  // y = bottom
    }
    return PrimitiveSpec{"rot/" + std::to_string(r), "rot", r, 0.0,
                         JointDistribution(Alphabet(bit_labels(r)), Alphabet(std::move(ys)),
                                           std::move(table))};
}

PrimitiveSpec make_ot(int r) {
    if (r < 1 || r > 6)
        throw ValidationError("make_ot: r must be in [1, 6], got " + std::to_string(r));
    const Eigen::Index half = Eigen::Index(1) << r;
    std::vector<std::string> ys;
    for (int c = 0; c < 2; ++c)
        for (Eigen::Index y = 0; y < half; ++y)
            ys.push_back(std::to_string(c) + ":" + bits(y, r));
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(half * half, 2 * half);
    const double mass = std::ldexp(1.0, -(2 * r + 1));
    for (Eigen::Index x = 0; x < half * half; ++x) {
        const Eigen::Index x0 = x >> r;
        const Eigen::Index x1 = x & (half - 1);
        table(x, x0) = mass;         // c = 0, y = x0
        table(x, half + x1) = mass;  // c = 1, y = x1
    }
    return PrimitiveSpec{"ot/" + std::to_string(r), "ot", r, 0.0,
                         JointDistribution(Alphabet(bit_labels(2 * r)), Alphabet(std::move(ys)),
                                           std::move(table))};
}

PrimitiveSpec make_sand() {
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(4, 4);
    for (Eigen::Index x = 0; x < 2; ++x)
        for (Eigen::Index a = 0; a < 2; ++a)
            for (Eigen::Index y = 0; y < 2; ++y)
                table(2 * x + a, 2 * y + ((x & y) ^ a)) = 0.125;
    return PrimitiveSpec{"sand", "sand", 0, 0.0,
                         JointDistribution(Alphabet(bit_labels(2)), Alphabet(bit_labels(2)),
                                           std::move(table))};
}

PrimitiveSpec make_otp(double p) {
    if (!(p > 0.0 && p < 0.5))
        throw ValidationError("make_otp: p must lie in (0, 1/2), got " + format_p(p));
    std::vector<std::string> ys = {"0:0", "0:1", "1:0", "1:1"};
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(4, 4);
    for (Eigen::Index x = 0; x < 4; ++x) {
        const Eigen::Index x0 = x >> 1;
        const Eigen::Index x1 = x & 1;
        table(x, x0) = (1.0 - p) / 8.0;        // c = 0, y = x0
        table(x, 1 - x0) = p / 8.0;            // c = 0, y flipped
        table(x, 2 + x1) = (1.0 - p) / 8.0;    // c = 1, y = x1
        table(x, 2 + (1 - x1)) = p / 8.0;      // c = 1, y flipped
    }
    return PrimitiveSpec{"otp/" + format_p(p), "otp", 0, p,
                         JointDistribution(Alphabet(bit_labels(2)), Alphabet(std::move(ys)),
                                           std::move(table))};
}

PrimitiveSpec make_primitive(const std::string& id) {
    std::string body = id;
    const std::string prefix = "primitive://";
    if (body.rfind(prefix, 0) == 0) body = body.substr(prefix.size());

    std::string family = body;
    std::string param;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        family = body.substr(0, slash);
        param = body.substr(slash + 1);
    }

    auto parse_int = [&](const std::string& s) {
        size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ParseError("primitive id '" + id + "': expected an integer parameter");
        }
        if (used != s.size())
            throw ParseError("primitive id '" + id + "': trailing characters after parameter");
        return value;
    };
    auto parse_real = [&](const std::string& s) {
        size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ParseError("primitive id '" + id + "': expected a real parameter");
        }
        if (used != s.size())
            throw ParseError("primitive id '" + id + "': trailing characters after parameter");
        return value;
    };

    if (family == "sand") {
        if (!param.empty()) throw ParseError("primitive id '" + id + "': sand takes no parameter");
        return make_sand();
    }
    if (family == "rot") {
        if (param.empty()) throw ParseError("primitive id '" + id + "': rot needs /r");
        return make_rot(parse_int(param));
    }
    if (family == "ot") {
        if (param.empty()) throw ParseError("primitive id '" + id + "': ot needs /r");
        return make_ot(parse_int(param));
    }
    if (family == "otp") {
        if (param.empty()) throw ParseError("primitive id '" + id + "': otp needs /p");
        return make_otp(parse_real(param));
    }
    throw ParseError("unknown primitive family '" + family + "' in '" + id + "'");
}

RotClosedForm rot_leakage_closed(int r) {
    if (r < 1) throw ValidationError("rot_leakage_closed: r must be >= 1");
    if (r > 24) throw DimensionTooLarge("rot_leakage_closed: spectrum of 2^" + std::to_string(r) +
                                        " entries exceeds the resource guard");
    const Eigen::Index dim = Eigen::Index(1) << r;
    const double small = std::ldexp(1.0, -(r + 1));
    const double big = 0.5 + small;
    RotClosedForm out;
    out.spectrum = Eigen::VectorXd::Constant(dim, small);
    out.spectrum(0) = big;
    // -small*log2(small) = small*(r+1) exactly, since small = 2^{-(r+1)}.
    out.s_a = -big * std::log2(big) + static_cast<double>(dim - 1) * small * (r + 1);
    out.delta = out.s_a - static_cast<double>(r) / 2.0;
    return out;
}

OtClosedForm ot_entropy_closed(double omega) {
    double w = std::fmod(omega, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    const double c = std::cos(w / 4.0);
    const double s = std::sin(w / 4.0);
    OtClosedForm out;
    out.spectrum = Eigen::VectorXd(4);
    out.spectrum << 0.25 * (1.0 + c), 0.25 * (1.0 - c), 0.25 * (1.0 + s), 0.25 * (1.0 - s);
    std::sort(out.spectrum.begin(), out.spectrum.end(), std::greater<double>());
    out.s_aprime = 1.0 + 0.5 * (binary_entropy((1.0 - c) / 2.0) + binary_entropy((1.0 - s) / 2.0));
    return out;
}

OtpBound otp_lower_bound(double p) {
    if (!(p >= 0.0 && p < 0.5))
        throw ValidationError("otp_lower_bound: p must lie in [0, 1/2), got " + format_p(p));
    const double threshold = 0.5 - 0.5 / std::sqrt(2.0);
    if (p >= threshold) return OtpBound{0.0, false};
    const double gap = 0.5 - p - std::sqrt(p * (1.0 - p));
    return OtpBound{gap * gap / (32.0 * std::log(2.0)), true};
}

}  // namespace embedlab

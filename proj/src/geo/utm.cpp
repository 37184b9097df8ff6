#include "lodtex/geo/utm.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/geo/crs.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <string>

namespace lodtex::geo {

// ---------------------------------------------------------------------------
// CRS tags

Crs Crs::utm(int zone, bool north) {
    Crs c;
    c.kind = Kind::Projected;
    c.zone = zone;
    c.north = north;
    c.epsg = north ? 25800 + zone : 32700 + zone;
    return c;
}

Crs Crs::geodetic() {
    Crs c;
    c.kind = Kind::Geodetic;
    c.zone = 0;
    c.epsg = 4326;
    return c;
}

Crs Crs::from_srs_name(std::string_view srs) {
    // First run of digits after "EPSG"; compound codes keep the horizontal part.
    const auto pos = srs.find("EPSG");
    if (pos == std::string_view::npos) throw CrsError("unrecognised srsName: " + std::string(srs));
    std::size_t i = pos + 4;
    while (i < srs.size() && !std::isdigit(static_cast<unsigned char>(srs[i]))) ++i;
    int code = 0;
    bool any = false;
    while (i < srs.size() && std::isdigit(static_cast<unsigned char>(srs[i]))) {
        code = code * 10 + (srs[i] - '0');
        any = true;
        ++i;
    }
    if (!any) throw CrsError("srsName without EPSG code: " + std::string(srs));
    if (code == 4326 || code == 4258 || code == 4979 || code == 4937) return geodetic();
    if (code > 25800 && code <= 25860) return utm(code - 25800, true);
    if (code > 32600 && code <= 32660) {
        Crs c = utm(code - 32600, true);
        c.epsg = code;
        return c;
    }
    if (code > 32700 && code <= 32760) return utm(code - 32700, false);
    throw CrsError("unsupported EPSG code " + std::to_string(code));
}

std::string Crs::name() const { return "EPSG:" + std::to_string(epsg); }

// ---------------------------------------------------------------------------
// Transverse Mercator

namespace {

struct Series {
    double n;
    double rectifying_radius;  // A
    std::array<double, 6> alpha;
    std::array<double, 6> beta;
    double e;  // first eccentricity
};

Series make_series(const Ellipsoid& el) {
    Series s{};
    const double n = el.f / (2.0 - el.f);
    const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
    s.n = n;
    s.e = std::sqrt(el.f * (2.0 - el.f));
    s.rectifying_radius = el.a / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
    s.alpha = {
        n / 2 - 2 * n2 / 3 + 5 * n3 / 16 + 41 * n4 / 180 - 127 * n5 / 288 + 7891 * n6 / 37800,
        13 * n2 / 48 - 3 * n3 / 5 + 557 * n4 / 1440 + 281 * n5 / 630 - 1983433 * n6 / 1935360,
        61 * n3 / 240 - 103 * n4 / 140 + 15061 * n5 / 26880 + 167603 * n6 / 181440,
        49561 * n4 / 161280 - 179 * n5 / 168 + 6601661 * n6 / 7257600,
        34729 * n5 / 80640 - 3418889 * n6 / 1995840,
        212378941 * n6 / 319334400,
    };
    s.beta = {
        n / 2 - 2 * n2 / 3 + 37 * n3 / 96 - n4 / 360 - 81 * n5 / 512 + 96199 * n6 / 604800,
        n2 / 48 + n3 / 15 - 437 * n4 / 1440 + 46 * n5 / 105 - 1118711 * n6 / 3870720,
        17 * n3 / 480 - 37 * n4 / 840 - 209 * n5 / 4480 + 5569 * n6 / 90720,
        4397 * n4 / 161280 - 11 * n5 / 504 - 830251 * n6 / 7257600,
        4583 * n5 / 161280 - 108847 * n6 / 3991680,
        20648693 * n6 / 638668800,
    };
    return s;
}

// tan of conformal latitude from tan of geodetic latitude.
double taupf(double tau, double e) {
    const double tau1 = std::hypot(1.0, tau);
    const double sig = std::sinh(e * std::atanh(e * tau / tau1));
    return std::hypot(1.0, sig) * tau - sig * tau1;
}

// Newton inversion of taupf.
double tauf(double taup, double e) {
    const double e2m = 1.0 - e * e;
    double tau = taup / e2m;
    for (int i = 0; i < 10; ++i) {
        const double taupa = taupf(tau, e);
        const double dtau =
            (taup - taupa) * (1.0 + e2m * tau * tau) / (e2m * std::hypot(1.0, tau) * std::hypot(1.0, taupa));
        tau += dtau;
        if (std::abs(dtau) < 1e-15 * std::max(1.0, std::abs(tau))) break;
    }
    return tau;
}

}  // namespace

double central_meridian(int zone) { return -183.0 + 6.0 * zone; }

UtmPoint geodetic_to_utm(const GeodeticPoint& g, int zone, const Ellipsoid& el) {
    if (zone < 1 || zone > 60) throw ArgumentError("UTM zone out of range: " + std::to_string(zone));
    if (!(std::abs(g.lat) <= kUtmMaxLatitude))
        throw OutOfDomainError("latitude " + std::to_string(g.lat) + " outside +-84 degrees");
    if (!(std::abs(g.lon) <= 180.0)) throw OutOfDomainError("longitude outside +-180 degrees");
    static const Series s = make_series(Ellipsoid{});
    const Series local = (el.a == Ellipsoid{}.a && el.f == Ellipsoid{}.f) ? s : make_series(el);

    const double phi = deg2rad(g.lat);
    const double lam = deg2rad(wrap180(g.lon - central_meridian(zone)));
    const double taup = taupf(std::tan(phi), local.e);
    const double xi_p = std::atan2(taup, std::cos(lam));
    const double eta_p = std::asinh(std::sin(lam) / std::hypot(taup, std::cos(lam)));

    double xi = xi_p, eta = eta_p;
    for (int j = 1; j <= 6; ++j) {
        xi += local.alpha[j - 1] * std::sin(2 * j * xi_p) * std::cosh(2 * j * eta_p);
        eta += local.alpha[j - 1] * std::cos(2 * j * xi_p) * std::sinh(2 * j * eta_p);
    }

    UtmPoint p;
    p.zone = zone;
    p.north = g.lat >= 0.0;
    p.easting = kUtmFalseEasting + kUtmScale * local.rectifying_radius * eta;
    p.northing = kUtmScale * local.rectifying_radius * xi + (p.north ? 0.0 : kUtmFalseNorthingSouth);
    return p;
}

GeodeticPoint utm_to_geodetic(const UtmPoint& p, const Ellipsoid& el) {
    if (p.zone < 1 || p.zone > 60) throw ArgumentError("UTM zone out of range: " + std::to_string(p.zone));
    if (!(p.easting > 0.0 && p.easting < 1.0e6)) throw OutOfDomainError("easting outside (0, 1e6)");
    if (!(p.northing >= 0.0)) throw OutOfDomainError("negative northing");
    static const Series s = make_series(Ellipsoid{});
    const Series local = (el.a == Ellipsoid{}.a && el.f == Ellipsoid{}.f) ? s : make_series(el);

    const double k0A = kUtmScale * local.rectifying_radius;
    const double xi = (p.northing - (p.north ? 0.0 : kUtmFalseNorthingSouth)) / k0A;
    const double eta = (p.easting - kUtmFalseEasting) / k0A;

    double xi_p = xi, eta_p = eta;
    for (int j = 1; j <= 6; ++j) {
        xi_p -= local.beta[j - 1] * std::sin(2 * j * xi) * std::cosh(2 * j * eta);
        eta_p -= local.beta[j - 1] * std::cos(2 * j * xi) * std::sinh(2 * j * eta);
    }
    const double taup = std::sin(xi_p) / std::hypot(std::sinh(eta_p), std::cos(xi_p));
    const double lam = std::atan2(std::sinh(eta_p), std::cos(xi_p));
    const double tau = tauf(taup, local.e);

    GeodeticPoint g;
    g.lat = rad2deg(std::atan(tau));
    g.lon = wrap180(rad2deg(lam) + central_meridian(p.zone));
    if (std::abs(g.lat) > kUtmMaxLatitude)
        throw OutOfDomainError("latitude " + std::to_string(g.lat) + " outside +-84 degrees");
    return g;
}

Vec2 metres_per_degree(double lat_deg, const Ellipsoid& el) {
    const double e2 = el.f * (2.0 - el.f);
    const double s = std::sin(deg2rad(lat_deg));
    const double w = std::sqrt(1.0 - e2 * s * s);
    const double prime_vertical = el.a / w;
    const double meridional = el.a * (1.0 - e2) / (w * w * w);
    return {deg2rad(1.0) * prime_vertical * std::cos(deg2rad(lat_deg)), deg2rad(1.0) * meridional};
}

}  // namespace lodtex::geo

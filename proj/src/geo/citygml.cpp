#include "lodtex/geo/citygml.hpp"

#include "lodtex/core/error.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace lodtex::geo {

std::string_view to_string(SurfaceClass c) {
    switch (c) {
        case SurfaceClass::WallSurface: return "WallSurface";
        case SurfaceClass::GroundSurface: return "GroundSurface";
        case SurfaceClass::RoofSurface: return "RoofSurface";
        case SurfaceClass::OpeningWindow: return "Window";
        case SurfaceClass::OpeningDoor: return "Door";
        case SurfaceClass::Other: return "Other";
    }
    return "Other";
}

double BRepBuilding::min_z() const {
    double z = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) z = std::min(z, v.z());
    return z;
}

double BRepBuilding::max_z() const {
    double z = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) z = std::max(z, v.z());
    return z;
}

std::vector<std::size_t> BRepBuilding::wall_surfaces() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < surfaces.size(); ++i)
        if (surfaces[i].cls == SurfaceClass::WallSurface && !surfaces[i].polygons.empty()) out.push_back(i);
    return out;
}

std::vector<std::size_t> BRepBuilding::openings_of(std::size_t surface_index) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < surfaces.size(); ++i)
        if (is_opening(surfaces[i].cls) && surfaces[i].parent == static_cast<std::ptrdiff_t>(surface_index))
            out.push_back(i);
    return out;
}

std::vector<Vec3> BRepBuilding::polygon_points(std::size_t polygon_index) const {
    std::vector<Vec3> pts;
    for (auto i : polygons.at(polygon_index).ring) pts.push_back(vertices[i]);
    return pts;
}

std::map<std::string, std::size_t> CityModel::warning_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& w : warnings) ++counts[w.kind];
    return counts;
}

// ---------------------------------------------------------------------------
// Triangulation

namespace {

Vec3 newell_normal(const std::vector<Vec3>& ring) {
    Vec3 n = Vec3::Zero();
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec3& a = ring[i];
        const Vec3& b = ring[(i + 1) % m];
        n.x() += (a.y() - b.y()) * (a.z() + b.z());
        n.y() += (a.z() - b.z()) * (a.x() + b.x());
        n.z() += (a.x() - b.x()) * (a.y() + b.y());
    }
    return n;
}

std::vector<Vec2> project_dominant(const std::vector<Vec3>& ring, const Vec3& n) {
    int drop = 0;
    n.cwiseAbs().maxCoeff(&drop);
    std::vector<Vec2> out;
    out.reserve(ring.size());
    for (const auto& p : ring) {
        switch (drop) {
            case 0: out.emplace_back(p.y(), p.z()); break;
            case 1: out.emplace_back(p.z(), p.x()); break;
            default: out.emplace_back(p.x(), p.y()); break;
        }
    }
    // Keep the projected winding consistent with the 3D winding.
    if (n[drop] < 0)
        for (auto& q : out) q.x() = -q.x();
    return out;
}

bool is_convex(const std::vector<Vec2>& p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double c = cross2(p[(i + 1) % n] - p[i], p[(i + 2) % n] - p[(i + 1) % n]);
        if (c < -1e-12) return false;
    }
    return true;
}

bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d1 = cross2(b - a, p - a);
    const double d2 = cross2(c - b, p - b);
    const double d3 = cross2(a - c, p - c);
    return d1 >= 0 && d2 >= 0 && d3 >= 0;
}

std::vector<Triangle> ear_clip(const std::vector<Vec2>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<Triangle> tris;
    std::size_t guard = 0;
    while (idx.size() > 3 && guard < 10 * pts.size() * pts.size()) {
        ++guard;
        bool clipped = false;
        const std::size_t n = idx.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ia = idx[(i + n - 1) % n], ib = idx[i], ic = idx[(i + 1) % n];
            const Vec2 &a = pts[ia], &b = pts[ib], &c = pts[ic];
            if (cross2(b - a, c - b) <= 1e-14) continue;  // reflex or degenerate
            bool contains = false;
            for (std::size_t j = 0; j < n && !contains; ++j) {
                const std::size_t k = idx[j];
                if (k == ia || k == ib || k == ic) continue;
                contains = point_in_triangle(pts[k], a, b, c);
            }
            if (contains) continue;
            tris.push_back({ia, ib, ic});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
            break;
        }
        if (!clipped) break;
    }
    if (idx.size() == 3) tris.push_back({idx[0], idx[1], idx[2]});
    else if (idx.size() > 3)
        for (std::size_t i = 1; i + 1 < idx.size(); ++i) tris.push_back({idx[0], idx[i], idx[i + 1]});
    return tris;
}

}  // namespace

std::vector<Triangle> triangulate_polygon(const std::vector<Vec3>& ring) {
    std::vector<Triangle> tris;
    if (ring.size() < 3) return tris;
    if (ring.size() == 3) return {{0, 1, 2}};
    const Vec3 n = newell_normal(ring);
    if (n.norm() == 0.0) return tris;
    const auto flat = project_dominant(ring, n);
    if (is_convex(flat)) {
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) tris.push_back({0, i, i + 1});
        return tris;
    }
    return ear_clip(flat);
}

// ---------------------------------------------------------------------------
// SAX parser

namespace {

std::string_view local_name(const char* qname) {
    std::string_view s(qname);
    const auto colon = s.rfind(':');
    return colon == std::string_view::npos ? s : s.substr(colon + 1);
}

std::string_view prefix_of(const char* qname) {
    std::string_view s(qname);
    const auto colon = s.rfind(':');
    return colon == std::string_view::npos ? std::string_view{} : s.substr(0, colon);
}

std::optional<std::string> attribute(const char** attrs, std::string_view local) {
    for (int i = 0; attrs[i]; i += 2)
        if (local_name(attrs[i]) == local) return std::string(attrs[i + 1]);
    return std::nullopt;
}

const std::set<std::string_view> kUnsupportedFeatures = {
    "ClosureSurface", "OuterCeilingSurface", "OuterFloorSurface", "InteriorWallSurface",
    "CeilingSurface", "FloorSurface", "BuildingInstallation", "IntBuildingInstallation",
    "Room", "BuildingFurniture"};

struct OpenSurface {
    std::size_t index;  // into the building's surfaces
    std::size_t depth;  // element depth at which it was opened
};

struct PendingPolygon {
    std::string gml_id;
    std::vector<double> coords;
    bool have_exterior = false;
};

using Key = std::tuple<double, double, double>;

class Reader {
public:
    explicit Reader(XML_Parser p) : parser_(p) {}

    CityModel model;

    void start(const char* name, const char** attrs) {
        ++depth_;
        const auto local = local_name(name);
        if (!crs_ && (local == "Envelope" || local == "posList" || local == "Building")) {
            if (auto srs = attribute(attrs, "srsName")) crs_ = Crs::from_srs_name(*srs);
        }
        if (local == "Building") {
            if (!building_) {
                building_.emplace();
                building_depth_ = depth_;
                vertex_index_.clear();
                building_->id = attribute(attrs, "id").value_or("building_" + std::to_string(model.buildings.size()));
            }
            return;
        }
        if (!building_) return;

        if (local == "WallSurface" || local == "GroundSurface" || local == "RoofSurface" || local == "Window" ||
            local == "Door") {
            SemanticSurface s;
            s.cls = local == "WallSurface"     ? SurfaceClass::WallSurface
                    : local == "GroundSurface" ? SurfaceClass::GroundSurface
                    : local == "RoofSurface"   ? SurfaceClass::RoofSurface
                    : local == "Window"        ? SurfaceClass::OpeningWindow
                                               : SurfaceClass::OpeningDoor;
            s.gml_id = attribute(attrs, "id").value_or("");
            if (is_opening(s.cls)) {
                for (auto it = surfaces_.rbegin(); it != surfaces_.rend(); ++it) {
                    if (!is_opening(building_->surfaces[it->index].cls)) {
                        s.parent = static_cast<std::ptrdiff_t>(it->index);
                        break;
                    }
                }
            }
            building_->surfaces.push_back(std::move(s));
            surfaces_.push_back({building_->surfaces.size() - 1, depth_});
            return;
        }
        if (prefix_of(name) == "bldg" && kUnsupportedFeatures.contains(local)) {
            warn("unsupported-element", std::string(local) + " in building " + building_->id + " read as Other");
            return;
        }
        if (local == "Polygon") {
            polygon_.emplace();
            polygon_->gml_id = attribute(attrs, "id").value_or("");
            polygon_depth_ = depth_;
            return;
        }
        if (!polygon_) return;
        if (local == "exterior") {
            in_exterior_ = true;
        } else if (local == "interior") {
            in_interior_ = true;
            warn("interior-ring", "interior ring of polygon " + current_id() + " ignored");
        } else if (local == "posList" && in_exterior_ && !polygon_->have_exterior) {
            in_poslist_ = true;
            text_.clear();
        } else if (local == "pos" && in_exterior_) {
            warn("unsupported-element", "gml:pos ring in polygon " + current_id() + " ignored; use gml:posList");
        }
    }

    void end(const char* name) {
        const auto local = local_name(name);
        if (building_ && local == "Building" && depth_ == building_depth_) {
            finish_building();
        } else if (building_) {
            if (in_poslist_ && local == "posList") {
                in_poslist_ = false;
                parse_coords();
            } else if (local == "exterior") {
                in_exterior_ = false;
            } else if (local == "interior") {
                in_interior_ = false;
            } else if (polygon_ && local == "Polygon" && depth_ == polygon_depth_) {
                finish_polygon();
            } else if (!surfaces_.empty() && surfaces_.back().depth == depth_) {
                surfaces_.pop_back();
            }
        }
        --depth_;
    }

    void text(const char* s, int len) {
        if (in_poslist_) text_.append(s, static_cast<std::size_t>(len));
    }

private:
    std::string current_id() const {
        if (polygon_ && !polygon_->gml_id.empty()) return polygon_->gml_id;
        if (!surfaces_.empty()) {
            const auto& id = building_->surfaces[surfaces_.back().index].gml_id;
            if (!id.empty()) return id;
        }
        return building_ ? building_->id : std::string("?");
    }

    void warn(std::string kind, std::string message) {
        model.warnings.push_back({std::move(kind), std::move(message)});
    }

    void parse_coords() {
        std::vector<double> vals;
        const char* p = text_.data();
        const char* end = p + text_.size();
        while (p < end) {
            while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
            if (p >= end) break;
            double v = 0;
            auto [ptr, ec] = std::from_chars(p, end, v);
            if (ec != std::errc()) {
                throw GeometryError("non-numeric posList token at byte " +
                                        std::to_string(XML_GetCurrentByteIndex(parser_)),
                                    current_id());
            }
            vals.push_back(v);
            p = ptr;
        }
        if (vals.size() % 3 != 0)
            throw GeometryError("posList length " + std::to_string(vals.size()) + " is not divisible by 3",
                                current_id());
        polygon_->coords = std::move(vals);
        polygon_->have_exterior = true;
    }

    std::size_t vertex_id(const Vec3& v) {
        const Key k{v.x(), v.y(), v.z()};
        auto [it, inserted] = vertex_index_.try_emplace(k, building_->vertices.size());
        if (inserted) building_->vertices.push_back(v);
        return it->second;
    }

    void finish_polygon() {
        PendingPolygon poly = std::move(*polygon_);
        polygon_.reset();
        in_exterior_ = in_interior_ = in_poslist_ = false;
        if (!poly.have_exterior) return;

        std::vector<Vec3> pts;
        for (std::size_t i = 0; i + 2 < poly.coords.size(); i += 3) {
            Vec3 p(poly.coords[i], poly.coords[i + 1], poly.coords[i + 2]);
            if (!pts.empty() && pts.back() == p) continue;
            pts.push_back(p);
        }
        if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
        if (pts.size() < 3) {
            warn("degenerate-polygon", "polygon " + (poly.gml_id.empty() ? building_->id : poly.gml_id) +
                                           " has fewer than 3 distinct vertices");
            return;
        }

        std::size_t surface_index;
        if (surfaces_.empty()) {
            // Geometry outside any supported semantic surface.
            SemanticSurface s;
            s.cls = SurfaceClass::Other;
            building_->surfaces.push_back(std::move(s));
            surface_index = building_->surfaces.size() - 1;
        } else {
            surface_index = surfaces_.back().index;
        }

        Polygon out;
        out.gml_id = poly.gml_id;
        out.surface = surface_index;
        for (const auto& p : pts) out.ring.push_back(vertex_id(p));
        const std::size_t pidx = building_->polygons.size();
        building_->surfaces[surface_index].polygons.push_back(pidx);

        const SurfaceClass cls = building_->surfaces[surface_index].cls;
        for (const auto& t : triangulate_polygon(pts)) {
            building_->faces.push_back({out.ring[t[0]], out.ring[t[1]], out.ring[t[2]]});
            building_->face_class.push_back(cls);
            building_->face_polygon.push_back(pidx);
        }
        building_->polygons.push_back(std::move(out));
    }

    void finish_building() {
        BRepBuilding b = std::move(*building_);
        building_.reset();
        surfaces_.clear();
        b.crs = crs_.value_or(Crs::utm(32));
        if (b.polygons.empty()) {
            warn("empty-building", "building " + b.id + " has no surfaces; skipped");
            return;
        }
        model.buildings.push_back(std::move(b));
    }

    XML_Parser parser_;
    std::size_t depth_ = 0;
    std::optional<BRepBuilding> building_;
    std::size_t building_depth_ = 0;
    std::vector<OpenSurface> surfaces_;
    std::optional<PendingPolygon> polygon_;
    std::size_t polygon_depth_ = 0;
    bool in_exterior_ = false;
    bool in_interior_ = false;
    bool in_poslist_ = false;
    std::string text_;
    std::optional<Crs> crs_;
    std::map<Key, std::size_t> vertex_index_;
};

struct ParserHandle {
    XML_Parser p;
    explicit ParserHandle(XML_Parser parser) : p(parser) {}
    ~ParserHandle() { XML_ParserFree(p); }
    ParserHandle(const ParserHandle&) = delete;
    ParserHandle& operator=(const ParserHandle&) = delete;
};

}  // namespace

CityModel parse_citygml(std::string_view document) {
    ParserHandle handle(XML_ParserCreate(nullptr));
    Reader reader(handle.p);

    // Exceptions must not unwind through expat's C frames: handlers park the
    // failure and stop the parser, and it is rethrown after XML_Parse returns.
    std::exception_ptr failure;
    struct Guard {
        Reader* r;
        std::exception_ptr* failure;
        XML_Parser p;
    } guard{&reader, &failure, handle.p};
    XML_SetUserData(handle.p, &guard);
    XML_SetElementHandler(
        handle.p,
        [](void* ud, const XML_Char* name, const XML_Char** attrs) {
            auto* g = static_cast<Guard*>(ud);
            if (*g->failure) return;
            try {
                g->r->start(name, attrs);
            } catch (...) {
                *g->failure = std::current_exception();
                XML_StopParser(g->p, XML_FALSE);
            }
        },
        [](void* ud, const XML_Char* name) {
            auto* g = static_cast<Guard*>(ud);
            if (*g->failure) return;
            try {
                g->r->end(name);
            } catch (...) {
                *g->failure = std::current_exception();
                XML_StopParser(g->p, XML_FALSE);
            }
        });
    XML_SetCharacterDataHandler(handle.p, [](void* ud, const XML_Char* s, int len) {
        auto* g = static_cast<Guard*>(ud);
        if (!*g->failure) g->r->text(s, len);
    });

    const auto status = XML_Parse(handle.p, document.data(), static_cast<int>(document.size()), XML_TRUE);
    if (failure) std::rethrow_exception(failure);
    if (status != XML_STATUS_OK) {
        throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(handle.p)),
                         static_cast<std::size_t>(XML_GetCurrentByteIndex(handle.p)));
    }
    return std::move(reader.model);
}

CityModel parse_citygml_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CityGML file", path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_citygml(ss.str());
}

Footprint2D extract_footprint(const BRepBuilding& b) {
    for (const auto& poly : b.polygons) {
        if (b.surfaces[poly.surface].cls != SurfaceClass::GroundSurface) continue;
        Footprint2D f;
        f.building_id = b.id;
        f.crs = b.crs;
        for (auto i : poly.ring) f.ring.emplace_back(b.vertices[i].x(), b.vertices[i].y());
        return f;
    }
    throw MissingSurfaceError("building " + b.id + " has no GroundSurface");
}

void validate_footprint(const Footprint2D& f) {
    if (f.ring.size() < 3) throw GeometryError("footprint has fewer than 3 vertices", f.building_id);
    if (ring_self_intersects(f.ring)) throw GeometryError("footprint ring self-intersects", f.building_id);
}

}  // namespace lodtex::geo

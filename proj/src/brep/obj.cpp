#include "lodtex/brep/obj.hpp"

#include <array>
#include <charconv>

namespace lodtex::brep {

namespace {

std::string fmt(double x) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), end);
}

}  // namespace

void write_facade_obj(std::ostream& out, const Quad3D& quad, const std::string& mtl_file,
                      const std::string& material) {
    out << "mtllib " << mtl_file << '\n';
    out << "o facade\n";
    for (const auto& q : quad.q) out << "v " << fmt(q.x()) << ' ' << fmt(q.y()) << ' ' << fmt(q.z()) << '\n';
    out << "vt 0 0\nvt 1 0\nvt 1 1\nvt 0 1\n";
    out << "usemtl " << material << '\n';
    out << "f 1/1 2/2 3/3\nf 1/1 3/3 4/4\n";
}

void write_facade_mtl(std::ostream& out, const std::string& material, const std::string& texture_file) {
    out << "newmtl " << material << '\n';
    out << "Ka 1 1 1\nKd 1 1 1\nKs 0 0 0\nd 1\nillum 1\n";
    out << "map_Kd " << texture_file << '\n';
}

}  // namespace lodtex::brep

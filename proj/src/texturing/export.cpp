#include "lodtex/brep/obj.hpp"
#include "lodtex/core/error.hpp"
#include "lodtex/core/image_io.hpp"
#include "lodtex/texturing/texturing.hpp"

#include <fstream>

namespace lodtex::texturing {

ExportPaths export_textured(const brep::Quad3D& quad, const RasterImage& texture, const std::filesystem::path& prefix) {
    if (texture.empty()) throw ArgumentError("cannot export an empty texture");
    ExportPaths p{prefix, prefix, prefix};
    p.obj += ".obj";
    p.mtl += ".mtl";
    p.png += ".png";
    const std::string material = prefix.filename().string();

    std::ofstream obj(p.obj);
    if (!obj) throw IoError("cannot write", p.obj.string());
    brep::write_facade_obj(obj, quad, p.mtl.filename().string(), material);
    if (!obj.flush()) throw IoError("write failed", p.obj.string());

    std::ofstream mtl(p.mtl);
    if (!mtl) throw IoError("cannot write", p.mtl.string());
    brep::write_facade_mtl(mtl, material, p.png.filename().string());
    if (!mtl.flush()) throw IoError("write failed", p.mtl.string());

    write_png(p.png, texture);
    return p;
}

}  // namespace lodtex::texturing

#include "lodtex/core/image_io.hpp"

#include "lodtex/core/error.hpp"

#include <png.h>
// jpeglib.h needs size_t and FILE declared first.
#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <array>
#include <csetjmp>
#include <fstream>
#include <memory>

namespace lodtex {

namespace {

enum class Format { Png, Jpeg, Unknown };

Format sniff(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image", path.string());
    std::array<unsigned char, 8> sig{};
    in.read(reinterpret_cast<char*>(sig.data()), sig.size());
    if (in.gcount() >= 8 && png_sig_cmp(sig.data(), 0, 8) == 0) return Format::Png;
    if (in.gcount() >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) return Format::Jpeg;
    return Format::Unknown;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

RasterImage read_png(const std::filesystem::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw IoError(std::string("png read failed (") + image.message + ")", path.string());
    const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
    image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    RasterImage out(static_cast<int>(image.width), static_cast<int>(image.height), gray ? 1 : 3);
    if (!png_image_finish_read(&image, nullptr, out.data().data(), 0, nullptr)) {
        png_image_free(&image);
        throw IoError(std::string("png decode failed (") + image.message + ")", path.string());
    }
    return out;
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

RasterImage read_jpeg(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open image", path.string());
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    RasterImage out;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(std::string("jpeg decode failed (") + err.message + ")", path.string());
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, file.get());
    jpeg_read_header(&cinfo, TRUE);
    const bool gray = cinfo.jpeg_color_space == JCS_GRAYSCALE;
    cinfo.out_color_space = gray ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    out = RasterImage(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height),
                      gray ? 1 : 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.row(static_cast<int>(cinfo.output_scanline));
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return out;
}

}  // namespace

RasterImage read_image(const std::filesystem::path& path) {
    switch (sniff(path)) {
        case Format::Png:
            return read_png(path);
        case Format::Jpeg:
            return read_jpeg(path);
        default:
            throw IoError("unsupported image format", path.string());
    }
}

std::pair<int, int> read_image_size(const std::filesystem::path& path) {
    const Format f = sniff(path);
    if (f == Format::Png) {
        png_image image{};
        image.version = PNG_IMAGE_VERSION;
        if (!png_image_begin_read_from_file(&image, path.c_str()))
            throw IoError("png header read failed", path.string());
        std::pair<int, int> wh{static_cast<int>(image.width), static_cast<int>(image.height)};
        png_image_free(&image);
        return wh;
    }
    if (f == Format::Jpeg) {
        const RasterImage img = read_jpeg(path);
        return {img.width(), img.height()};
    }
    throw IoError("unsupported image format", path.string());
}

void write_png(const std::filesystem::path& path, const RasterImage& img) {
    if (img.empty()) throw IoError("refusing to write empty image", path.string());
    if (img.channels() != 1 && img.channels() != 3)
        throw IoError("png writer supports 1 or 3 channels", path.string());
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = img.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.c_str(), 0, img.data().data(), 0, nullptr))
        throw IoError(std::string("png write failed (") + image.message + ")", path.string());
}

void write_jpeg(const std::filesystem::path& path, const RasterImage& img, int quality) {
    if (img.empty()) throw IoError("refusing to write empty image", path.string());
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot open for writing", path.string());
    jpeg_compress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        throw IoError(std::string("jpeg encode failed (") + err.message + ")", path.string());
    }
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, file.get());
    cinfo.image_width = static_cast<JDIMENSION>(img.width());
    cinfo.image_height = static_cast<JDIMENSION>(img.height());
    cinfo.input_components = img.channels();
    cinfo.in_color_space = img.channels() == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        auto* row = const_cast<JSAMPLE*>(img.row(static_cast<int>(cinfo.next_scanline)));
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
}

void write_image(const std::filesystem::path& path, const RasterImage& img) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".jpg" || ext == ".jpeg")
        write_jpeg(path, img);
    else
        write_png(path, img);
}

BinaryMask read_mask(const std::filesystem::path& path) { return image_to_mask(read_image(path)); }

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) {
    write_png(path, mask_to_image(mask));
}

}  // namespace lodtex

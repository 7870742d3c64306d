#pragma once

// Requires libpng.

#include <csetjmp>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

#include "render.hpp"

namespace wildfire {

/// Encodes an RGB raster as PNG. No timestamp or text chunks are written, so
/// equal rasters encode to equal bytes.
inline std::string encode_png(const Raster& img) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    std::string out;
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("PNG encoding failed");
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t len) {
            static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<const char*>(data), len);
        },
        nullptr);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    for (int y = 0; y < img.height; ++y) {
        rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(
            img.rgb.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) * 3);
    }
    png_set_rows(png, info, rows.data());
    png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

/// Renders one frame as ASCII text or PNG bytes.
inline std::string render_frame(const ForestState& forest, std::span<const AgentState> agents,
                                const RenderOptions& options) {
    options.validate();
    if (options.format == FrameFormat::ascii) return render_ascii(forest, agents);
    return encode_png(rasterize(forest, agents, options.scale));
}

}  // namespace wildfire

#include "fimhe/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fimhe {

namespace {

// --- PGM ---------------------------------------------------------------

struct TokenReader {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    // Next whitespace-delimited token, '#' comments skipped.
    bool next_token(std::string& out) {
        while (pos < data.size()) {
            const char c = static_cast<char>(data[pos]);
            if (c == '#') {
                while (pos < data.size() && data[pos] != '\n') {
                    ++pos;
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
        if (pos >= data.size()) {
            return false;
        }
        out.clear();
        while (pos < data.size() &&
               !std::isspace(static_cast<unsigned char>(data[pos])) && data[pos] != '#') {
            out.push_back(static_cast<char>(data[pos]));
            ++pos;
        }
        return true;
    }

    long next_int(const char* what) {
        std::string token;
        if (!next_token(token)) {
            throw std::runtime_error(std::string("pgm: malformed header: missing ") + what);
        }
        for (char c : token) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw std::runtime_error(std::string("pgm: malformed header: bad ") + what);
            }
        }
        try {
            return std::stol(token);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string("pgm: malformed header: bad ") + what);
        }
    }
};

GrayImage load_pgm(std::span<const std::uint8_t> bytes, bool binary) {
    TokenReader reader{bytes, 2};  // past the magic
    const long width = reader.next_int("width");
    const long height = reader.next_int("height");
    const long maxval = reader.next_int("maxval");
    if (width <= 0 || height <= 0) {
        throw std::runtime_error("pgm: malformed header: non-positive dimensions");
    }
    if (maxval != 255) {
        throw std::runtime_error("pgm: unsupported maxval " + std::to_string(maxval));
    }
    GrayImage image;
    image.width = static_cast<int>(width);
    image.height = static_cast<int>(height);
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    image.pixels.resize(count);

    if (binary) {
        // Exactly one whitespace byte separates the maxval from the raster.
        if (reader.pos >= bytes.size() ||
            !std::isspace(static_cast<unsigned char>(bytes[reader.pos]))) {
            throw std::runtime_error("pgm: malformed header: missing raster separator");
        }
        ++reader.pos;
        if (bytes.size() - reader.pos < count) {
            throw std::runtime_error("pgm: truncated data");
        }
        std::memcpy(image.pixels.data(), bytes.data() + reader.pos, count);
    } else {
        std::string token;
        for (std::size_t i = 0; i < count; ++i) {
            if (!reader.next_token(token)) {
                throw std::runtime_error("pgm: truncated data");
            }
            long value = 0;
            try {
                value = std::stol(token);
            } catch (const std::exception&) {
                throw std::runtime_error("pgm: malformed sample '" + token + "'");
            }
            if (value < 0 || value > maxval) {
                throw std::runtime_error("pgm: sample out of range: " + token);
            }
            image.pixels[i] = static_cast<std::uint8_t>(value);
        }
    }
    return image;
}

// --- PNG ---------------------------------------------------------------

struct PngMemoryReader {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* reader = static_cast<PngMemoryReader*>(png_get_io_ptr(png));
    if (reader->pos + count > reader->data.size()) {
        png_error(png, "truncated data");
    }
    std::memcpy(out, reader->data.data() + reader->pos, count);
    reader->pos += count;
}

void png_write_to_vector(png_structp png, png_bytep data, png_size_t count) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + count);
}

void png_flush_noop(png_structp) {}

GrayImage load_png(std::span<const std::uint8_t> bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) {
        throw std::runtime_error("png: out of memory");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png: out of memory");
    }

    GrayImage image;
    std::vector<std::uint8_t> rows_storage;
    std::vector<png_bytep> row_ptrs;
    PngMemoryReader reader{bytes, 0};

    // libpng reports internal failures (bad CRC, short stream) via longjmp.
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("png: truncated or corrupt data");
    }

    png_set_read_fn(png, &reader, png_read_from_memory);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth != 8) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("png: unsupported bit depth " + std::to_string(bit_depth));
    }
    if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("png: unsupported color type (need 8-bit grayscale or RGB)");
    }

    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    rows_storage.resize(row_bytes * height);
    row_ptrs.resize(height);
    for (png_uint_32 r = 0; r < height; ++r) {
        row_ptrs[r] = rows_storage.data() + r * row_bytes;
    }
    png_read_image(png, row_ptrs.data());
    png_destroy_read_struct(&png, &info, nullptr);

    image.width = static_cast<int>(width);
    image.height = static_cast<int>(height);
    image.pixels.resize(static_cast<std::size_t>(width) * height);

    if (color_type == PNG_COLOR_TYPE_GRAY) {
        for (png_uint_32 r = 0; r < height; ++r) {
            std::memcpy(image.pixels.data() + static_cast<std::size_t>(r) * width,
                        rows_storage.data() + static_cast<std::size_t>(r) * row_bytes, width);
        }
    } else {
        for (png_uint_32 r = 0; r < height; ++r) {
            const std::uint8_t* src = rows_storage.data() + static_cast<std::size_t>(r) * row_bytes;
            std::uint8_t* dst = image.pixels.data() + static_cast<std::size_t>(r) * width;
            for (png_uint_32 c = 0; c < width; ++c) {
                const double y =
                    0.299 * src[3 * c] + 0.587 * src[3 * c + 1] + 0.114 * src[3 * c + 2];
                dst[c] = static_cast<std::uint8_t>(round_half_up(y));
            }
        }
    }
    return image;
}

void require_valid(const GrayImage& image) {
    if (!image.valid()) {
        throw std::invalid_argument("invalid image");
    }
}

bool ends_with_png(const std::string& path) {
    if (path.size() < 4) {
        return false;
    }
    std::string tail = path.substr(path.size() - 4);
    for (char& c : tail) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return tail == ".png";
}

}  // namespace

GrayImage load_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '2') {
        return load_pgm(bytes, false);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
        return load_pgm(bytes, true);
    }
    if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
        return load_png(bytes);
    }
    throw std::runtime_error("unrecognized image format (expect PGM P2/P5 or PNG)");
}

GrayImage load_image_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return load_image(bytes);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
    require_valid(image);
    char header[64];
    const int n = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", image.width,
                                image.height);
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), image.pixels.begin(), image.pixels.end());
    return out;
}

std::vector<std::uint8_t> encode_png(const GrayImage& image) {
    require_valid(image);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) {
        throw std::runtime_error("png: out of memory");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png: out of memory");
    }
    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("png: encode failed");
    }
    png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
    png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int r = 0; r < image.height; ++r) {
        png_write_row(png, const_cast<png_bytep>(image.pixels.data() +
                                                 static_cast<std::size_t>(r) * image.width));
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    return out;
}

void save_image_file(const GrayImage& image, const std::string& path) {
    const std::vector<std::uint8_t> bytes =
        ends_with_png(path) ? encode_png(image) : encode_pgm(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace fimhe

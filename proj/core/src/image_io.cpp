#include "elda/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "elda/errors.hpp"

namespace elda {

namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

bool is_image_ext(const std::string& ext) {
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm" || ext == ".png" ||
         ext == ".jpg" || ext == ".jpeg";
}

// --- PNM (P2/P3/P5/P6) ---

int pnm_next_int(std::istream& in, const std::filesystem::path& path) {
  // Skips whitespace and '#' comment lines between tokens.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) {
    throw FormatError("PNM header parse error in " + path.string());
  }
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    c = in.get();
  }
  return value;
}

GrayImage load_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  char p = 0, type = 0;
  in.get(p);
  in.get(type);
  if (p != 'P' || (type != '2' && type != '3' && type != '5' && type != '6')) {
    throw FormatError("unsupported PNM type in " + path.string());
  }
  const bool color = (type == '3' || type == '6');
  const bool ascii = (type == '2' || type == '3');
  const int width = pnm_next_int(in, path);
  const int height = pnm_next_int(in, path);
  const int maxval = pnm_next_int(in, path);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw FormatError("bad PNM dimensions in " + path.string());
  }

  const std::size_t samples =
      static_cast<std::size_t>(width) * height * (color ? 3 : 1);
  std::vector<double> values(samples);
  if (ascii) {
    for (std::size_t i = 0; i < samples; ++i) {
      values[i] = pnm_next_int(in, path);
    }
  } else {
    const int bytes_per_sample = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(samples * bytes_per_sample);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (!in) {
      throw FormatError("truncated PNM data in " + path.string());
    }
    for (std::size_t i = 0; i < samples; ++i) {
      values[i] = bytes_per_sample == 1
                      ? raw[i]
                      : (raw[2 * i] << 8 | raw[2 * i + 1]); // big-endian
    }
  }

  GrayImage out;
  out.width = width;
  out.height = height;
  out.pixels.resize(static_cast<std::size_t>(width) * height);
  const double inv = 1.0 / maxval;
  if (color) {
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
      out.pixels[i] = static_cast<float>(
          luminance(values[3 * i] * inv, values[3 * i + 1] * inv,
                    values[3 * i + 2] * inv));
    }
  } else {
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
      out.pixels[i] = static_cast<float>(values[i] * inv);
    }
  }
  return out;
}

// --- PNG ---

GrayImage load_png(const std::filesystem::path& path) {
  std::FILE* fp = std::fopen(path.string().c_str(), "rb");
  if (!fp) {
    throw IoError("cannot open " + path.string());
  }
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError("libpng initialization failed");
  }
  std::vector<unsigned char> data;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw FormatError("PNG decode error in " + path.string());
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  // Normalize everything to 8-bit gray or RGB without alpha.
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_packing(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(png);
  }
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY &&
      png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  png_read_update_info(png, info);

  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  if (width < 1 || height < 1 || (channels != 1 && channels != 3)) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw FormatError("unsupported PNG layout in " + path.string());
  }

  data.resize(static_cast<std::size_t>(width) * height * channels);
  rows.resize(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = data.data() + static_cast<std::size_t>(y) * width * channels;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);

  GrayImage out;
  out.width = width;
  out.height = height;
  out.pixels.resize(static_cast<std::size_t>(width) * height);
  if (channels == 1) {
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
      out.pixels[i] = static_cast<float>(data[i] / 255.0);
    }
  } else {
    const unsigned char* p = data.data();
    for (std::size_t i = 0; i < out.pixels.size(); ++i, p += 3) {
      out.pixels[i] = static_cast<float>(
          (299.0 * p[0] + 587.0 * p[1] + 114.0 * p[2]) / 255000.0);
    }
  }
  return out;
}

// --- JPEG ---

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(mgr->jump, 1);
}

GrayImage load_jpeg(const std::filesystem::path& path) {
  std::FILE* fp = std::fopen(path.string().c_str(), "rb");
  if (!fp) {
    throw IoError("cannot open " + path.string());
  }
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    std::fclose(fp);
    throw FormatError("JPEG decode error in " + path.string());
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, fp);
  jpeg_read_header(&cinfo, TRUE);
  jpeg_start_decompress(&cinfo);

  const int width = static_cast<int>(cinfo.output_width);
  const int height = static_cast<int>(cinfo.output_height);
  const int channels = cinfo.output_components;
  if (width < 1 || height < 1 || (channels != 1 && channels != 3)) {
    jpeg_destroy_decompress(&cinfo);
    std::fclose(fp);
    throw FormatError("unsupported JPEG layout in " + path.string());
  }

  GrayImage out;
  out.width = width;
  out.height = height;
  out.pixels.resize(static_cast<std::size_t>(width) * height);
  std::vector<unsigned char> row(static_cast<std::size_t>(width) * channels);
  unsigned char* rowp = row.data();
  for (int y = 0; y < height; ++y) {
    jpeg_read_scanlines(&cinfo, &rowp, 1);
    float* dst = out.pixels.data() + static_cast<std::size_t>(y) * width;
    if (channels == 1) {
      for (int x = 0; x < width; ++x) {
        dst[x] = static_cast<float>(row[x] / 255.0);
      }
    } else {
      const unsigned char* p = row.data();
      for (int x = 0; x < width; ++x, p += 3) {
        dst[x] = static_cast<float>(
            (299.0 * p[0] + 587.0 * p[1] + 114.0 * p[2]) / 255000.0);
      }
    }
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  std::fclose(fp);
  return out;
}

} // namespace

GrayImage load_image_gray(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) {
    throw IoError("cannot open " + path.string());
  }
  const std::string ext = lower_ext(path);
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
    return load_pnm(path);
  }
  if (ext == ".png") {
    return load_png(path);
  }
  if (ext == ".jpg" || ext == ".jpeg") {
    return load_jpeg(path);
  }
  throw FormatError("unsupported image extension: " + path.string());
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  if (!image.valid()) {
    throw InvalidInput("save_pgm: invalid image");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(image.width));
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const double v = std::clamp(static_cast<double>(image.at(x, y)), 0.0, 1.0);
      row[static_cast<std::size_t>(x)] =
          static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  out.flush();
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

std::vector<std::filesystem::path> list_frames(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec) || ec) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> frames;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_ext(lower_ext(entry.path()))) {
      frames.push_back(entry.path());
    }
  }
  std::sort(frames.begin(), frames.end(),
            [](const auto& a, const auto& b) {
              return a.filename().string() < b.filename().string();
            });
  return frames;
}

} // namespace elda

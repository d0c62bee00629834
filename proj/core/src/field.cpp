#include "stump/field.hpp"

#include <png.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace stump {

namespace {

void check_shape(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("field shape must be at least 1x1, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void check_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("field values must be finite");
    }
  }
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  std::transform(tail.begin(), tail.end(), tail.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return tail == suffix;
}

struct PngRead {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngRead() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWrite {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngWrite() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

ScalarField read_png(const std::string& path) {
  PngRead ctx;
  ctx.fp = std::fopen(path.c_str(), "rb");
  if (!ctx.fp) throw std::runtime_error("cannot open " + path);
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw std::runtime_error("png reader allocation failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw std::runtime_error("png reader allocation failed");

  if (setjmp(png_jmpbuf(ctx.png))) {
    throw std::runtime_error("failed to decode PNG file " + path);
  }
  png_init_io(ctx.png, ctx.fp);
  png_read_info(ctx.png, ctx.info);

  png_uint_32 width = png_get_image_width(ctx.png, ctx.info);
  png_uint_32 height = png_get_image_height(ctx.png, ctx.info);
  int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
  int color_type = png_get_color_type(ctx.png, ctx.info);

  if (color_type != PNG_COLOR_TYPE_GRAY) {
    throw std::runtime_error(path + ": only grayscale PNG is supported");
  }
  if (bit_depth != 8 && bit_depth != 16) {
    throw std::runtime_error(path + ": unsupported PNG bit depth " +
                             std::to_string(bit_depth));
  }
  if (width < 1 || height < 1) {
    throw std::runtime_error(path + ": empty image");
  }

  std::size_t stride = png_get_rowbytes(ctx.png, ctx.info);
  std::vector<png_byte> pixels(stride * height);
  std::vector<png_bytep> row_ptrs(height);
  for (png_uint_32 r = 0; r < height; ++r) row_ptrs[r] = pixels.data() + r * stride;
  png_read_image(ctx.png, row_ptrs.data());
  png_read_end(ctx.png, nullptr);

  ScalarField field(static_cast<int>(height), static_cast<int>(width));
  for (png_uint_32 r = 0; r < height; ++r) {
    const png_byte* row = row_ptrs[r];
    for (png_uint_32 c = 0; c < width; ++c) {
      double v;
      if (bit_depth == 8) {
        v = static_cast<double>(row[c]);
      } else {
        // PNG stores 16-bit samples big-endian; map the full range onto
        // [0, 255] so both depths share one value scale.
        unsigned raw = (static_cast<unsigned>(row[2 * c]) << 8) | row[2 * c + 1];
        v = static_cast<double>(raw) * 255.0 / 65535.0;
      }
      field.at(static_cast<int>(r), static_cast<int>(c)) = v;
    }
  }
  return field;
}

void write_png(const ScalarField& field, const std::string& path) {
  PngWrite ctx;
  ctx.fp = std::fopen(path.c_str(), "wb");
  if (!ctx.fp) throw std::runtime_error("cannot open " + path + " for writing");
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw std::runtime_error("png writer allocation failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw std::runtime_error("png writer allocation failed");

  if (setjmp(png_jmpbuf(ctx.png))) {
    throw std::runtime_error("failed to encode PNG file " + path);
  }
  png_init_io(ctx.png, ctx.fp);
  png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(field.cols()),
               static_cast<png_uint_32>(field.rows()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);

  std::vector<png_byte> row(static_cast<std::size_t>(field.cols()));
  for (int r = 0; r < field.rows(); ++r) {
    for (int c = 0; c < field.cols(); ++c) {
      double v = std::clamp(field.at(r, c), 0.0, 255.0);
      row[static_cast<std::size_t>(c)] = static_cast<png_byte>(std::nearbyint(v));
    }
    png_write_row(ctx.png, row.data());
  }
  png_write_end(ctx.png, ctx.info);
}

}  // namespace

ScalarField::ScalarField(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), values_(static_cast<std::size_t>(rows) * cols, fill) {
  check_shape(rows, cols);
  if (!std::isfinite(fill)) throw std::invalid_argument("field values must be finite");
}

ScalarField::ScalarField(int rows, int cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  check_shape(rows, cols);
  if (values_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("field value count does not match shape");
  }
  check_finite(values_);
}

double ScalarField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

ScalarField load_field(const std::string& path) {
  if (has_suffix(path, ".png")) return read_png(path);
  if (has_suffix(path, ".csv")) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      return field_from_csv(buf.str());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  throw std::runtime_error("unrecognized field extension in " + path +
                           " (expected .png or .csv)");
}

void save_field(const ScalarField& field, const std::string& path) {
  if (has_suffix(path, ".png")) {
    write_png(field, path);
    return;
  }
  if (has_suffix(path, ".csv")) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << field_to_csv(field);
    if (!out) throw std::runtime_error("failed to write " + path);
    return;
  }
  throw std::runtime_error("unrecognized field extension in " + path +
                           " (expected .png or .csv)");
}

std::string field_to_csv(const ScalarField& field) {
  std::string out;
  out.reserve(static_cast<std::size_t>(field.size()) * 20);
  char buf[64];
  for (int r = 0; r < field.rows(); ++r) {
    for (int c = 0; c < field.cols(); ++c) {
      auto res = std::to_chars(buf, buf + sizeof(buf), field.at(r, c));
      if (c > 0) out.push_back(',');
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

ScalarField field_from_csv(const std::string& text) {
  std::vector<double> values;
  int cols = -1;
  int row = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos,
                          (eol == std::string::npos ? text.size() : eol) - pos);
    pos = (eol == std::string::npos) ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (pos < text.size()) {
        throw std::runtime_error("blank line " + std::to_string(row + 1) + " in CSV");
      }
      continue;
    }
    int col = 0;
    std::size_t tok_start = 0;
    while (tok_start <= line.size()) {
      std::size_t comma = line.find(',', tok_start);
      std::string_view tok =
          line.substr(tok_start, (comma == std::string_view::npos ? line.size() : comma) -
                                     tok_start);
      double v;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
          !std::isfinite(v)) {
        throw std::runtime_error("bad value '" + std::string(tok) + "' at row " +
                                 std::to_string(row + 1) + ", column " +
                                 std::to_string(col + 1));
      }
      values.push_back(v);
      ++col;
      if (comma == std::string_view::npos) break;
      tok_start = comma + 1;
    }
    if (cols < 0) {
      cols = col;
    } else if (col != cols) {
      throw std::runtime_error("row " + std::to_string(row + 1) + " has " +
                               std::to_string(col) + " values, expected " +
                               std::to_string(cols));
    }
    ++row;
  }
  if (row == 0) throw std::runtime_error("empty CSV");
  return ScalarField(row, cols, std::move(values));
}

ScalarField add_uniform_noise(const ScalarField& field, double eps, Rng& rng) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("noise amplitude must be finite and non-negative");
  }
  ScalarField out = field;
  if (eps == 0.0) return out;
  for (int i = 0; i < out.size(); ++i) out[i] += uniform_in(rng, -eps, eps);
  return out;
}

double mse(const ScalarField& field, const ScalarField& reference) {
  if (!field.same_shape(reference)) {
    throw std::invalid_argument("mse: shape mismatch");
  }
  double acc = 0.0;
  for (int i = 0; i < field.size(); ++i) {
    double d = field[i] - reference[i];
    acc += d * d;
  }
  return acc / field.size();
}

PixelGradient mse_gradient(const ScalarField& field, const ScalarField& reference) {
  if (!field.same_shape(reference)) {
    throw std::invalid_argument("mse: shape mismatch");
  }
  PixelGradient grad(field.rows(), field.cols());
  double scale = 2.0 / field.size();
  for (int i = 0; i < field.size(); ++i) grad[i] = scale * (field[i] - reference[i]);
  return grad;
}

namespace {
constexpr double kBceDelta = 1e-6;

double bce_prob(double v) { return std::clamp(v / 255.0, kBceDelta, 1.0 - kBceDelta); }
}  // namespace

double binary_cross_entropy(const ScalarField& field, const ScalarField& reference) {
  if (!field.same_shape(reference)) {
    throw std::invalid_argument("binary_cross_entropy: shape mismatch");
  }
  double acc = 0.0;
  for (int i = 0; i < field.size(); ++i) {
    double p = bce_prob(field[i]);
    double q = bce_prob(reference[i]);
    acc -= q * std::log(p) + (1.0 - q) * std::log(1.0 - p);
  }
  return acc / field.size();
}

PixelGradient binary_cross_entropy_gradient(const ScalarField& field,
                                            const ScalarField& reference) {
  if (!field.same_shape(reference)) {
    throw std::invalid_argument("binary_cross_entropy: shape mismatch");
  }
  PixelGradient grad(field.rows(), field.cols());
  double scale = 1.0 / (255.0 * field.size());
  for (int i = 0; i < field.size(); ++i) {
    double raw = field[i] / 255.0;
    if (raw <= kBceDelta || raw >= 1.0 - kBceDelta) {
      grad[i] = 0.0;  // pinned at the clamp, locally flat
      continue;
    }
    double q = bce_prob(reference[i]);
    grad[i] = scale * (-q / raw + (1.0 - q) / (1.0 - raw));
  }
  return grad;
}

ScalarField make_generic(const ScalarField& field) {
  double range = field.max_value() - field.min_value();
  double eta = 1e-9 * std::max(range, 1.0) / field.size();
  for (int attempt = 0; attempt < 200; ++attempt) {
    ScalarField out = field;
    for (int i = 0; i < out.size(); ++i) out[i] += i * eta;
    std::vector<double> sorted = out.values();
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      return out;
    }
    eta *= 4.0;
  }
  throw std::runtime_error("make_generic: could not separate equal values");
}

}  // namespace stump

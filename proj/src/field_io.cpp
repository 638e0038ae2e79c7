#include "lplab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace lplab {

namespace {

constexpr char kMagic[8] = {'L', 'P', 'F', 'I', 'E', 'L', 'D', '1'};

static_assert(std::endian::native == std::endian::little,
              "LPF1 I/O assumes a little-endian host");

void put_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_impl(const std::string& path, const Grid& grid, const char* kind,
                std::initializer_list<const SpectralField*> components) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("write_field: cannot open '" + path + "'");
  const nlohmann::json header = {{"n_per_dim", grid.n()},
                                 {"box_length", grid.box_length()},
                                 {"kind", kind},
                                 {"layout", "complex-interleaved-f64"},
                                 {"order", "row-major-modes"}};
  const std::string text = header.dump();
  out.write(kMagic, sizeof kMagic);
  put_u64(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto* c : components) {
    const auto data = c->coeffs();
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(Complex)));
  }
  if (!out) throw InputError("write_field: write to '" + path + "' failed");
}

}  // namespace

void write_field(const std::string& path, const SpectralField& field) {
  write_impl(path, field.grid(), "scalar", {&field});
}

void write_field(const std::string& path, const SpectralVectorField& field) {
  write_impl(path, field.grid(), "vector3", {&field[0], &field[1], &field[2]});
}

AnyField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("read_field: cannot open '" + path + "'");
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw InputError("read_field: '" + path + "' is not an LPF1 file");
  }
  std::uint64_t length = 0;
  if (!in.read(reinterpret_cast<char*>(&length), sizeof length) || length > (1u << 20)) {
    throw InputError("read_field: bad header length in '" + path + "'");
  }
  std::string text(length, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(length))) {
    throw InputError("read_field: truncated header in '" + path + "'");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("read_field: malformed header in '" + path + "': " + e.what());
  }
  int n = 0;
  double box = 0.0;
  std::string kind;
  try {
    n = header.at("n_per_dim").get<int>();
    box = header.at("box_length").get<double>();
    kind = header.at("kind").get<std::string>();
    if (header.at("layout") != "complex-interleaved-f64" || header.at("order") != "row-major-modes") {
      throw InputError("read_field: unsupported layout in '" + path + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("read_field: incomplete header in '" + path + "': " + e.what());
  }
  const Grid grid(n, box);
  auto read_component = [&]() {
    std::vector<Complex> data(grid.size());
    if (!in.read(reinterpret_cast<char*>(data.data()),
                 static_cast<std::streamsize>(data.size() * sizeof(Complex)))) {
      throw InputError("read_field: truncated payload in '" + path + "'");
    }
    SpectralField f(grid, data);
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (std::abs(f[i] - data[i]) > 1e-12 * std::max(1.0, std::abs(data[i]))) {
        warn("read_field: '" + path + "' was not Hermitian-symmetric; symmetrized on load");
        break;
      }
    }
    return f;
  };
  if (kind == "scalar") return read_component();
  if (kind != "vector3") throw InputError("read_field: unknown kind '" + kind + "' in '" + path + "'");
  auto x = read_component();
  auto y = read_component();
  auto z = read_component();
  return SpectralVectorField(std::move(x), std::move(y), std::move(z));
}

SpectralVectorField read_vector_field(const std::string& path) {
  auto any = read_field(path);
  if (auto* v = std::get_if<SpectralVectorField>(&any)) return std::move(*v);
  throw InputError("read_field: '" + path + "' holds a scalar field, a vector field is required");
}

}  // namespace lplab

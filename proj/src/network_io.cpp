#include "pstab/network_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "pstab/error.hpp"

namespace pstab {

namespace {

constexpr char kMagic[4] = {'P', 'S', 'T', 'N'};
constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ofstream& out, const void* data, std::size_t size) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void write_u32(std::ofstream& out, std::uint32_t v) { write_bytes(out, &v, sizeof v); }
void write_u64(std::ofstream& out, std::uint64_t v) { write_bytes(out, &v, sizeof v); }

void read_bytes(std::ifstream& in, void* data, std::size_t size, const std::string& what) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
  if (in.gcount() != static_cast<std::streamsize>(size)) {
    fail_data("format error: truncated network file while reading " + what);
  }
}

std::uint32_t read_u32(std::ifstream& in, const std::string& what) {
  std::uint32_t v = 0;
  read_bytes(in, &v, sizeof v, what);
  return v;
}

std::uint64_t read_u64(std::ifstream& in, const std::string& what) {
  std::uint64_t v = 0;
  read_bytes(in, &v, sizeof v, what);
  return v;
}

}  // namespace

void save_network(const Network& net, const std::string& path,
                  const std::string& metadata_json) {
  if (net.layers.empty()) {
    fail_data("validation error: cannot save a network with no layers");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_data("io error: cannot open \"" + path + "\" for writing");

  write_bytes(out, kMagic, 4);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(net.layers.size()));
  for (std::size_t w : net.widths()) write_u64(out, w);
  for (const Layer& layer : net.layers) {
    write_bytes(out, layer.weight.values.data(),
                layer.weight.values.size() * sizeof(double));
    write_bytes(out, layer.bias.data(), layer.bias.size() * sizeof(double));
  }
  write_u64(out, metadata_json.size());
  write_bytes(out, metadata_json.data(), metadata_json.size());
  out.flush();
  if (!out) fail_data("io error: failed writing \"" + path + "\"");
}

NetworkFile load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_data("io error: cannot open \"" + path + "\" for reading");

  char magic[4] = {};
  read_bytes(in, magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    fail_data("format error: \"" + path + "\" is not a network file (bad magic)");
  }
  const std::uint32_t version = read_u32(in, "version");
  if (version != kVersion) {
    fail_data("format error: unsupported network file version " +
              std::to_string(version));
  }
  const std::uint32_t layer_count = read_u32(in, "layer count");
  if (layer_count == 0) fail_data("format error: network file with zero layers");

  std::vector<std::uint64_t> widths(layer_count + 1);
  for (auto& w : widths) {
    w = read_u64(in, "layer width");
    if (w == 0) fail_data("format error: zero layer width in network file");
  }
  if (widths.back() != 2) {
    fail_data("format error: projector output width must be 2, got " +
              std::to_string(widths.back()));
  }

  NetworkFile file;
  file.net.layers.resize(layer_count);
  for (std::uint32_t l = 0; l < layer_count; ++l) {
    const std::size_t out_w = static_cast<std::size_t>(widths[l + 1]);
    const std::size_t in_w = static_cast<std::size_t>(widths[l]);
    Layer& layer = file.net.layers[l];
    layer.weight = Matrix(out_w, in_w);
    read_bytes(in, layer.weight.values.data(), out_w * in_w * sizeof(double),
               "layer " + std::to_string(l) + " weights");
    layer.bias.resize(out_w);
    read_bytes(in, layer.bias.data(), out_w * sizeof(double),
               "layer " + std::to_string(l) + " biases");
  }

  const std::uint64_t meta_len = read_u64(in, "metadata length");
  file.metadata_json.resize(static_cast<std::size_t>(meta_len));
  if (meta_len > 0) {
    read_bytes(in, file.metadata_json.data(), file.metadata_json.size(), "metadata");
  }
  char extra = 0;
  in.read(&extra, 1);
  if (in.gcount() != 0) {
    fail_data("format error: trailing bytes after network metadata in \"" + path + "\"");
  }
  if (!file.net.all_finite()) {
    fail_data("validation error: non-finite parameter in \"" + path + "\"");
  }
  return file;
}

}  // namespace pstab

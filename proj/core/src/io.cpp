#include "spxkit/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace spx {

namespace {

std::vector<char> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return bytes;
}

void write_all(const std::string& path, const std::string& header, const void* payload,
               std::size_t payload_bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(static_cast<const char*>(payload), static_cast<std::streamsize>(payload_bytes));
  if (!out) throw IoError("short write to " + path);
}

// Little-endian float32/uint32 payloads. Reads go through memcpy so the code
// is alignment-safe; byte order is assumed little-endian (the only platform
// this project targets).
static_assert(sizeof(float) == 4);

struct HeaderCursor {
  const char* p;
  const char* end;

  // Reads one whitespace-delimited PNM token, skipping '#' comments.
  std::string pnm_token() {
    while (p < end && (std::isspace(static_cast<unsigned char>(*p)) || *p == '#')) {
      if (*p == '#') {
        while (p < end && *p != '\n') ++p;
      } else {
        ++p;
      }
    }
    std::string tok;
    while (p < end && !std::isspace(static_cast<unsigned char>(*p))) tok.push_back(*p++);
    return tok;
  }
};

long parse_positive(const std::string& tok, const char* what) {
  if (tok.empty()) throw MalformedHeader(std::string("missing ") + what);
  char* endp = nullptr;
  long v = std::strtol(tok.c_str(), &endp, 10);
  if (*endp != '\0' || v < 1) throw MalformedHeader(std::string("bad ") + what + ": " + tok);
  return v;
}

MultibandRaster load_feb1(const std::vector<char>& bytes, const std::string& path) {
  const char* nl = static_cast<const char*>(
      std::memchr(bytes.data(), '\n', bytes.size()));
  if (!nl) throw MalformedHeader(path + ": no header line");
  std::string header(static_cast<const char*>(bytes.data()), nl);
  std::istringstream hs(header);
  std::string magic, dtype;
  long w = 0, h = 0, b = 0;
  hs >> magic >> w >> h >> b >> dtype;
  if (hs.fail() || magic != "FEB1" || dtype != "f32" || w < 1 || h < 1 || b < 1) {
    throw MalformedHeader(path + ": bad FEB1 header '" + header + "'");
  }
  std::size_t offset = header.size() + 1;
  std::size_t count = static_cast<std::size_t>(w) * h * b;
  if (bytes.size() - offset < count * 4) {
    throw TruncatedPayload(path + ": declared " + std::to_string(count) + " values");
  }
  MultibandRaster r;
  r.width = static_cast<int>(w);
  r.height = static_cast<int>(h);
  r.bands = static_cast<int>(b);
  r.data.resize(count);
  std::memcpy(r.data.data(), bytes.data() + offset, count * 4);
  for (float v : r.data) {
    if (!std::isfinite(v)) throw NonFiniteValue(path + ": non-finite sample");
  }
  return r;
}

MultibandRaster load_pnm(const std::vector<char>& bytes, const std::string& path) {
  HeaderCursor cur{bytes.data(), bytes.data() + bytes.size()};
  std::string magic = cur.pnm_token();
  int channels = magic == "P5" ? 1 : 3;
  long w = parse_positive(cur.pnm_token(), "width");
  long h = parse_positive(cur.pnm_token(), "height");
  long maxval = parse_positive(cur.pnm_token(), "maxval");
  if (maxval > 255) throw MalformedHeader(path + ": only 8-bit PNM supported");
  if (cur.p >= cur.end) throw TruncatedPayload(path + ": no payload");
  ++cur.p;  // single whitespace after maxval
  std::size_t count = static_cast<std::size_t>(w) * h * channels;
  if (static_cast<std::size_t>(cur.end - cur.p) < count) {
    throw TruncatedPayload(path + ": expected " + std::to_string(count) + " bytes");
  }
  MultibandRaster r;
  r.width = static_cast<int>(w);
  r.height = static_cast<int>(h);
  r.bands = channels;
  r.data.resize(count);
  // PNM interleaves channels per pixel; FEB1 rasters are band-sequential.
  const auto* src = reinterpret_cast<const unsigned char*>(cur.p);
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        r.at(static_cast<int>(x), static_cast<int>(y), c) =
            static_cast<float>(src[(y * w + x) * channels + c]);
      }
    }
  }
  return r;
}

}  // namespace

MultibandRaster load_raster(const std::string& path) {
  std::vector<char> bytes = read_all(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "FEB1", 4) == 0) {
    return load_feb1(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return load_pnm(bytes, path);
  }
  throw MalformedHeader(path + ": unknown magic");
}

void save_raster(const MultibandRaster& raster, const std::string& path) {
  std::string header = "FEB1 " + std::to_string(raster.width) + " " +
                       std::to_string(raster.height) + " " + std::to_string(raster.bands) +
                       " f32\n";
  write_all(path, header, raster.data.data(), raster.data.size() * 4);
}

void normalize_labels(LabelMap& map) {
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  remap.reserve(1024);
  std::uint32_t next = 0;
  for (auto& l : map.labels) {
    auto [it, inserted] = remap.try_emplace(l, next);
    if (inserted) ++next;
    l = it->second;
  }
  map.k = next;
}

LabelMap load_label_map(const std::string& path) {
  std::vector<char> bytes = read_all(path);
  const char* nl = static_cast<const char*>(
      std::memchr(bytes.data(), '\n', bytes.size()));
  if (!nl) throw MalformedHeader(path + ": no header line");
  std::string header(static_cast<const char*>(bytes.data()), nl);
  std::istringstream hs(header);
  std::string magic;
  long w = 0, h = 0;
  hs >> magic >> w >> h;
  if (hs.fail() || magic != "FEL1" || w < 1 || h < 1) {
    throw MalformedHeader(path + ": bad FEL1 header '" + header + "'");
  }
  std::size_t offset = header.size() + 1;
  std::size_t count = static_cast<std::size_t>(w) * h;
  if (bytes.size() - offset < count * 4) {
    throw TruncatedPayload(path + ": declared " + std::to_string(count) + " labels");
  }
  LabelMap map;
  map.width = static_cast<int>(w);
  map.height = static_cast<int>(h);
  map.labels.resize(count);
  std::memcpy(map.labels.data(), bytes.data() + offset, count * 4);
  normalize_labels(map);
  return map;
}

void save_label_map(const LabelMap& map, const std::string& path) {
  std::string header =
      "FEL1 " + std::to_string(map.width) + " " + std::to_string(map.height) + "\n";
  write_all(path, header, map.labels.data(), map.labels.size() * 4);
}

GroundTruth load_ground_truth(const std::string& path) {
  MultibandRaster pgm = load_raster(path);
  if (pgm.bands != 1) throw MalformedHeader(path + ": ground truth must be single-band PGM");
  GroundTruth gt;
  gt.width = pgm.width;
  gt.height = pgm.height;
  gt.classes.resize(pgm.plane());
  for (std::size_t i = 0; i < gt.classes.size(); ++i) {
    int v = static_cast<int>(pgm.data[i]);
    switch (v) {
      case 0: gt.classes[i] = GtClass::Forest; break;
      case 255: gt.classes[i] = GtClass::Deforest; break;
      case 128: gt.classes[i] = GtClass::Excluded; break;
      default:
        throw IllegalPixelValue(path + ": pixel value " + std::to_string(v) +
                                " not in {0,128,255}");
    }
  }
  return gt;
}

void save_ground_truth(const GroundTruth& gt, const std::string& path) {
  std::string header = "P5\n" + std::to_string(gt.width) + " " + std::to_string(gt.height) +
                       "\n255\n";
  std::vector<unsigned char> bytes(gt.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    switch (gt.classes[i]) {
      case GtClass::Forest: bytes[i] = 0; break;
      case GtClass::Deforest: bytes[i] = 255; break;
      case GtClass::Excluded: bytes[i] = 128; break;
    }
  }
  write_all(path, header, bytes.data(), bytes.size());
}

}  // namespace spx

#include "sam/serialize.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace sam {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'A', 'M', 'N'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kFlagStoredSet = 0x01;

using Kind = SerializeError::Kind;

void put_u8(std::ostream& out, std::uint8_t v) {
  out.put(static_cast<char>(v));
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint8_t get_u8(std::istream& in) {
  int c = in.get();
  if (c == EOF) throw SerializeError(Kind::truncated, "unexpected end of file");
  return static_cast<std::uint8_t>(c);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw SerializeError(Kind::truncated, "unexpected end of file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw SerializeError(Kind::truncated, "unexpected end of file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

/// Bit rows are written LSB-first within each byte.
void write_bits(std::ostream& out, const std::uint64_t* words,
                std::size_t first_bit, std::size_t nbits) {
  std::size_t nbytes = (nbits + 7) / 8;
  for (std::size_t byte = 0; byte < nbytes; ++byte) {
    std::uint8_t v = 0;
    for (std::size_t bit = 0; bit < 8; ++bit) {
      std::size_t pos = byte * 8 + bit;
      if (pos >= nbits) break;
      std::size_t src = first_bit + pos;
      if ((words[src >> 6] >> (src & 63)) & 1ULL) v |= 1u << bit;
    }
    put_u8(out, v);
  }
}

void read_bits(std::istream& in, std::uint64_t* words, std::size_t first_bit,
               std::size_t nbits) {
  std::size_t nbytes = (nbits + 7) / 8;
  for (std::size_t byte = 0; byte < nbytes; ++byte) {
    std::uint8_t v = get_u8(in);
    for (std::size_t bit = 0; bit < 8; ++bit) {
      std::size_t pos = byte * 8 + bit;
      if (pos >= nbits) break;
      if ((v >> bit) & 1u) {
        std::size_t dst = first_bit + pos;
        words[dst >> 6] |= 1ULL << (dst & 63);
      }
    }
  }
}

void write_stored(std::ostream& out, const std::vector<Pattern>& stored) {
  for (const auto& p : stored) {
    put_u32(out, p.weight());
    for (auto i : p.active()) put_u32(out, i);
  }
}

std::vector<Pattern> read_stored(std::istream& in, const NeuronSpace& space,
                                 std::uint64_t count) {
  std::vector<Pattern> stored;
  stored.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    std::uint32_t len = get_u32(in);
    if (len > space.size())
      throw SerializeError(Kind::dimension_mismatch,
                           "stored pattern longer than the space");
    std::vector<std::uint32_t> act(len);
    for (auto& v : act) v = get_u32(in);
    stored.push_back(Pattern(space, std::move(act)));
  }
  return stored;
}

}  // namespace

/// Grants serialization access to network internals.
class NetworkCodec {
 public:
  static void save(const AnyNetwork& net, std::ostream& out,
                   bool include_stored);
  static AnyNetwork load(std::istream& in);

 private:
  static void save_amari(const AmariNetwork& net, std::ostream& out);
  static void save_willshaw(const WillshawNetwork& net, std::ostream& out);
  static void save_gb(const GBNetwork& net, std::ostream& out);
};

void NetworkCodec::save_amari(const AmariNetwork& net, std::ostream& out) {
  const std::size_t n = net.space().size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      put_u32(out, net.weights_[i * n + j]);
}

void NetworkCodec::save_willshaw(const WillshawNetwork& net,
                                 std::ostream& out) {
  const std::size_t n = net.space().size();
  for (std::size_t i = 0; i < n; ++i) {
    auto row = net.row(static_cast<std::uint32_t>(i));
    write_bits(out, row.data(), i, n - i);  // j >= i, row-padded to a byte
  }
}

void NetworkCodec::save_gb(const GBNetwork& net, std::ostream& out) {
  const std::uint32_t c = net.space().clusters();
  const std::uint32_t l = net.space().cluster_size();
  std::vector<std::uint64_t> block((std::size_t(l) * l + 63) / 64);
  for (std::uint32_t a = 0; a < c; ++a) {
    for (std::uint32_t b = a + 1; b < c; ++b) {
      std::fill(block.begin(), block.end(), 0ULL);
      for (std::uint32_t k = 0; k < l; ++k) {
        auto row = net.block_row(a, b, k);
        for (std::uint32_t r = 0; r < l; ++r) {
          if ((row[r >> 6] >> (r & 63)) & 1ULL) {
            std::size_t pos = std::size_t(k) * l + r;
            block[pos >> 6] |= 1ULL << (pos & 63);
          }
        }
      }
      write_bits(out, block.data(), 0, std::size_t(l) * l);
    }
  }
  write_bits(out, net.self_.words().data(), 0, net.space().size());
}

void NetworkCodec::save(const AnyNetwork& net, std::ostream& out,
                        bool include_stored) {
  const auto& space = space_of(net);
  const bool with_stored =
      include_stored &&
      std::visit([](const auto& n) { return n.retains_stored(); }, net);

  out.write(kMagic.data(), kMagic.size());
  put_u8(out, kVersion);
  put_u8(out, static_cast<std::uint8_t>(model_of(net)));
  put_u8(out, with_stored ? kFlagStoredSet : 0);
  put_u64(out, space.size());
  put_u64(out, space.has_layout() ? space.clusters() : 0);
  put_u64(out, space.has_layout() ? space.cluster_size() : 0);
  put_u64(out, stored_count_of(net));

  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AmariNetwork>)
          save_amari(n, out);
        else if constexpr (std::is_same_v<T, WillshawNetwork>)
          save_willshaw(n, out);
        else
          save_gb(n, out);
      },
      net);

  if (with_stored)
    std::visit([&](const auto& n) { write_stored(out, n.stored()); }, net);
  if (!out) throw SerializeError(Kind::io, "write failed");
}

AnyNetwork NetworkCodec::load(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()))
    throw SerializeError(Kind::truncated, "file too short for header");
  if (magic != kMagic)
    throw SerializeError(Kind::magic_mismatch, "bad magic bytes");
  const std::uint8_t version = get_u8(in);
  if (version != kVersion)
    throw SerializeError(Kind::version_mismatch,
                         "unsupported format version");
  const std::uint8_t model = get_u8(in);
  if (model > 2)
    throw SerializeError(Kind::dimension_mismatch, "unknown model tag");
  const std::uint8_t flags = get_u8(in);
  const std::uint64_t n = get_u64(in);
  const std::uint64_t c = get_u64(in);
  const std::uint64_t l = get_u64(in);
  const std::uint64_t m = get_u64(in);

  if (n < 2 || n > (1ULL << 32))
    throw SerializeError(Kind::dimension_mismatch, "bad neuron count");
  if ((c == 0) != (l == 0) || (c != 0 && c * l != n))
    throw SerializeError(Kind::dimension_mismatch,
                         "cluster layout does not match n");
  if (model == 2 && c == 0)
    throw SerializeError(Kind::dimension_mismatch,
                         "gb network without cluster layout");

  NeuronSpace space =
      c != 0 ? NeuronSpace(static_cast<std::uint32_t>(c),
                           static_cast<std::uint32_t>(l))
             : NeuronSpace(static_cast<std::uint32_t>(n));
  const bool with_stored = flags & kFlagStoredSet;

  AnyNetwork net = [&]() -> AnyNetwork {
    switch (model) {
      case 0: {
        AmariNetwork a(space, with_stored);
        const std::size_t nn = space.size();
        for (std::size_t i = 0; i < nn; ++i)
          for (std::size_t j = i + 1; j < nn; ++j) {
            std::uint32_t v = get_u32(in);
            a.weights_[i * nn + j] = v;
            a.weights_[j * nn + i] = v;
          }
        a.stored_count_ = m;
        return a;
      }
      case 1: {
        WillshawNetwork w(space, with_stored);
        const std::size_t nn = space.size();
        std::vector<std::uint64_t> row((nn + 63) / 64);
        for (std::size_t i = 0; i < nn; ++i) {
          std::fill(row.begin(), row.end(), 0ULL);
          read_bits(in, row.data(), i, nn - i);
          for (std::size_t j = i; j < nn; ++j) {
            if ((row[j >> 6] >> (j & 63)) & 1ULL) {
              w.set(static_cast<std::uint32_t>(i),
                    static_cast<std::uint32_t>(j));
              w.set(static_cast<std::uint32_t>(j),
                    static_cast<std::uint32_t>(i));
            }
          }
        }
        w.stored_count_ = m;
        return w;
      }
      default: {
        GBNetwork g(space, with_stored);
        const std::uint32_t cc = space.clusters();
        const std::uint32_t ll = space.cluster_size();
        std::vector<std::uint64_t> block((std::size_t(ll) * ll + 63) / 64);
        for (std::uint32_t a = 0; a < cc; ++a) {
          for (std::uint32_t b = a + 1; b < cc; ++b) {
            std::fill(block.begin(), block.end(), 0ULL);
            read_bits(in, block.data(), 0, std::size_t(ll) * ll);
            for (std::uint32_t k = 0; k < ll; ++k)
              for (std::uint32_t r = 0; r < ll; ++r) {
                std::size_t pos = std::size_t(k) * ll + r;
                if ((block[pos >> 6] >> (pos & 63)) & 1ULL) {
                  g.set(a, k, b, r);
                  g.set(b, r, a, k);
                }
              }
          }
        }
        read_bits(in, g.self_.words().data(), 0, space.size());
        g.stored_count_ = m;
        return g;
      }
    }
  }();

  if (with_stored) {
    auto stored = read_stored(in, space, m);
    std::visit([&](auto& nw) { nw.stored_ = std::move(stored); }, net);
  }

  // anything left over means the header lied about the payload
  if (in.peek() != EOF)
    throw SerializeError(Kind::dimension_mismatch,
                         "trailing bytes after payload");
  return net;
}

void save(const AnyNetwork& net, std::ostream& out, bool include_stored) {
  NetworkCodec::save(net, out, include_stored);
}

void save(const AnyNetwork& net, const std::filesystem::path& path,
          bool include_stored) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw SerializeError(SerializeError::Kind::io,
                         "cannot open for writing: " + path.string());
  save(net, out, include_stored);
}

AnyNetwork load(std::istream& in) { return NetworkCodec::load(in); }

AnyNetwork load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw SerializeError(SerializeError::Kind::io,
                         "cannot open for reading: " + path.string());
  return load(in);
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::amari: return "amari";
    case ModelKind::willshaw: return "willshaw";
    case ModelKind::gb: return "gb";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "amari") return ModelKind::amari;
  if (name == "willshaw") return ModelKind::willshaw;
  if (name == "gb") return ModelKind::gb;
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace sam

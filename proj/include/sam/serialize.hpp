#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sam/network.hpp"

namespace sam {

/// Errors raised while reading a network file. Each failure mode has its own
/// kind so callers can tell a bad file from a bad dimension.
class SerializeError : public std::runtime_error {
 public:
  enum class Kind {
    magic_mismatch,
    version_mismatch,
    truncated,
    dimension_mismatch,
    io,
  };

  SerializeError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Network file format (all integers little-endian):
//   magic "SAMN" | version u8 | model u8 (0=amari,1=willshaw,2=gb) |
//   flags u8 (bit0: stored set present) | n u64 | c u64 | l u64 | M u64
// payload:
//   amari    - upper triangle (j > i) row-major, u32 counts
//   willshaw - triangle with diagonal (j >= i) bit-packed row-major,
//              each row padded to a byte
//   gb       - for each cluster pair a < a', an l*l bit block row-major
//              padded to a byte, then the n-bit self-activity bitmap
// optional stored set: M records of u32 length + sorted u32 indices.

void save(const AnyNetwork& net, std::ostream& out,
          bool include_stored = true);
void save(const AnyNetwork& net, const std::filesystem::path& path,
          bool include_stored = true);

AnyNetwork load(std::istream& in);
AnyNetwork load(const std::filesystem::path& path);

}  // namespace sam

// Copyright 2026 The LayerBFT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "layerbft/core/value.hpp"

namespace layerbft {

/// 32-byte SHA-256 digest. Also used as the authenticator type, since vote
/// and transaction authenticators are HMAC-SHA256 tags.
struct Digest
{
  std::array<std::uint8_t, 32> bytes{};

  bool        IsZero() const;
  std::string Hex() const;
  /// First `n` hex characters, for logs and tables.
  std::string Short(std::size_t n = 12) const { return Hex().substr(0, n); }
  Bytes       ToBytes() const { return Bytes(bytes.begin(), bytes.end()); }

  static Digest FromHex(std::string_view hex);
  static Digest FromBytes(std::span<std::uint8_t const> b);

  friend auto operator<=>(Digest const &, Digest const &) = default;
};

using Authenticator = Digest;

Digest Sha256(std::span<std::uint8_t const> data);
Digest Sha256(std::string_view data);
Digest HmacSha256(std::span<std::uint8_t const> key, std::span<std::uint8_t const> data);

/// Incremental SHA-256, used for trace digests that cover millions of bytes.
class Sha256Stream
{
public:
  Sha256Stream();
  ~Sha256Stream();
  Sha256Stream(Sha256Stream const &)            = delete;
  Sha256Stream &operator=(Sha256Stream const &) = delete;

  void   Update(std::span<std::uint8_t const> data);
  Digest Finish();

private:
  struct Impl;
  Impl *impl_;
};

std::string ToHex(std::span<std::uint8_t const> data);
Bytes       FromHex(std::string_view hex);

/// Deterministic per-node key material. A stand-in for a real keyring: any
/// node can derive any other node's key, which is enough for the vote
/// counting arguments but is not an authentication scheme.
Digest NodeKey(std::string_view node_id);
Digest SupplierKey(std::string_view supplier_id);

Authenticator Authenticate(std::string_view node_id, std::span<std::uint8_t const> message);
bool          VerifyAuthenticator(std::string_view node_id, std::span<std::uint8_t const> message,
                                  Authenticator const &tag);

Value  ToValue(Digest const &d);
void   FromValue(Value const &v, Digest &out);

}  // namespace layerbft

template <>
struct std::hash<layerbft::Digest>
{
  std::size_t operator()(layerbft::Digest const &d) const noexcept
  {
    std::size_t h = 0;
    for (int i = 0; i < 8; ++i)
    {
      h = (h << 8) | d.bytes[i];
    }
    return h;
  }
};

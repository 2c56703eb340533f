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

#include "layerbft/core/digest.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <algorithm>
#include <stdexcept>

namespace layerbft {
namespace {

int HexNibble(char c)
{
  if (c >= '0' && c <= '9')
  {
    return c - '0';
  }
  if (c >= 'a' && c <= 'f')
  {
    return c - 'a' + 10;
  }
  if (c >= 'A' && c <= 'F')
  {
    return c - 'A' + 10;
  }
  return -1;
}

std::span<std::uint8_t const> AsBytes(std::string_view s)
{
  return {reinterpret_cast<std::uint8_t const *>(s.data()), s.size()};
}

}  // namespace

bool Digest::IsZero() const
{
  return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

std::string Digest::Hex() const
{
  return ToHex(bytes);
}

Digest Digest::FromHex(std::string_view hex)
{
  auto b = layerbft::FromHex(hex);
  return FromBytes(b);
}

Digest Digest::FromBytes(std::span<std::uint8_t const> b)
{
  if (b.size() != 32)
  {
    throw CodecError("digest must be 32 bytes, got " + std::to_string(b.size()));
  }
  Digest d;
  std::copy(b.begin(), b.end(), d.bytes.begin());
  return d;
}

Digest Sha256(std::span<std::uint8_t const> data)
{
  Digest d;
  ::SHA256(data.data(), data.size(), d.bytes.data());
  return d;
}

Digest Sha256(std::string_view data)
{
  return Sha256(AsBytes(data));
}

Digest HmacSha256(std::span<std::uint8_t const> key, std::span<std::uint8_t const> data)
{
  Digest       d;
  unsigned int len = 0;
  ::HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
         d.bytes.data(), &len);
  if (len != d.bytes.size())
  {
    throw std::runtime_error("HMAC-SHA256 failed");
  }
  return d;
}

struct Sha256Stream::Impl
{
  EVP_MD_CTX *ctx = nullptr;
};

Sha256Stream::Sha256Stream() : impl_{new Impl}
{
  impl_->ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr);
}

Sha256Stream::~Sha256Stream()
{
  EVP_MD_CTX_free(impl_->ctx);
  delete impl_;
}

void Sha256Stream::Update(std::span<std::uint8_t const> data)
{
  EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
}

Digest Sha256Stream::Finish()
{
  Digest       d;
  unsigned int len = 0;
  EVP_DigestFinal_ex(impl_->ctx, d.bytes.data(), &len);
  EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr);
  return d;
}

std::string ToHex(std::span<std::uint8_t const> data)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string           out;
  out.reserve(data.size() * 2);
  for (auto b : data)
  {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes FromHex(std::string_view hex)
{
  if (hex.size() % 2 != 0)
  {
    throw CodecError("odd-length hex string");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2)
  {
    int hi = HexNibble(hex[i]);
    int lo = HexNibble(hex[i + 1]);
    if (hi < 0 || lo < 0)
    {
      throw CodecError("invalid hex digit");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

Digest NodeKey(std::string_view node_id)
{
  return Sha256("layerbft/node-key/" + std::string{node_id});
}

Digest SupplierKey(std::string_view supplier_id)
{
  return Sha256("layerbft/supplier-key/" + std::string{supplier_id});
}

Authenticator Authenticate(std::string_view node_id, std::span<std::uint8_t const> message)
{
  return HmacSha256(NodeKey(node_id).bytes, message);
}

bool VerifyAuthenticator(std::string_view node_id, std::span<std::uint8_t const> message,
                         Authenticator const &tag)
{
  return Authenticate(node_id, message) == tag;
}

Value ToValue(Digest const &d)
{
  return Value{d.ToBytes()};
}

void FromValue(Value const &v, Digest &out)
{
  out = Digest::FromBytes(v.AsBytes());
}

}  // namespace layerbft

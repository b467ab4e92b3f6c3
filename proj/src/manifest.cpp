// SPDX-License-Identifier: Apache-2.0
//
// cfimage - step-frequency array imaging with coherence-factor filtering
// Copyright (C) 2026 The cfimage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cfimage/manifest.hpp"

#include "cfimage/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace cfimage
{
    std::string sha256_file(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw InputError("cannot open '" + path.string() + "' for digesting");

        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
        if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("SHA-256 initialisation failed");

        std::array<char, 1 << 16> buf{};
        while (is)
        {
            is.read(buf.data(), buf.size());
            const auto n = static_cast<std::size_t>(is.gcount());
            if (n > 0 && EVP_DigestUpdate(ctx.get(), buf.data(), n) != 1)
                throw std::runtime_error("SHA-256 update failed");
        }

        std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
            throw std::runtime_error("SHA-256 finalisation failed");

        std::string hex;
        for (unsigned int i = 0; i < len; ++i)
        {
            char byte[3];
            std::snprintf(byte, sizeof byte, "%02x", digest[i]);
            hex += byte;
        }
        return hex;
    }

    void RunManifest::add_input(const std::filesystem::path &path)
    {
        inputs.emplace_back(path.string(), sha256_file(path));
    }

    void RunManifest::add_parameter(std::string key, std::string value)
    {
        parameters.emplace_back(std::move(key), std::move(value));
    }

    std::string RunManifest::to_text() const
    {
        std::ostringstream os;
        os << "tool = " << kToolVersion << '\n' << "subcommand = " << subcommand << '\n';
        for (const auto &[path, digest] : inputs)
            os << "input = " << path << " sha256:" << digest << '\n';
        for (const auto &[key, value] : parameters)
            os << "param." << key << " = " << value << '\n';
        for (const auto &out : outputs)
            os << "output = " << out << '\n';
        for (const auto &note : notes)
            os << "note = " << note << '\n';
        return os.str();
    }

    void RunManifest::write(const std::filesystem::path &path) const
    {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os)
            throw InputError("cannot write manifest '" + path.string() + "'");
        os << to_text();
    }
}

/*
 * Copyright 2026 The tailcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "tailcheck/corpus.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tailcheck {

// Links between whitespace token indices of a source and a target sentence.
class AlignmentLinks {
  public:
    using Link = std::pair<std::uint32_t, std::uint32_t>;

    AlignmentLinks() = default;
    // Sorts and deduplicates; throws AlignmentError on an out-of-range link.
    AlignmentLinks(std::vector<Link> links, std::size_t src_len, std::size_t tgt_len);

    const std::vector<Link>& links() const noexcept { return links_; }
    std::size_t src_len() const noexcept { return src_len_; }
    std::size_t tgt_len() const noexcept { return tgt_len_; }
    bool empty() const noexcept { return links_.empty(); }

    // aligned[i] is true when source token i has at least one link.
    std::vector<bool> aligned_sources() const;

    bool operator==(const AlignmentLinks&) const = default;

  private:
    std::vector<Link> links_;
    std::size_t src_len_ = 0;
    std::size_t tgt_len_ = 0;
};

// A record-level alignment problem: the pair is excluded from coverage
// checking, the run continues.
class AlignmentError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Whitespace-separated 0-based "i-j" links. Duplicates collapse.
AlignmentLinks parse_pharaoh(std::string_view line, std::size_t src_len, std::size_t tgt_len);

std::string to_pharaoh(const AlignmentLinks& links);

// Token i linked to token i while both exist.
AlignmentLinks diagonal_links(std::size_t src_len, std::size_t tgt_len);

struct AlignmentResult {
    std::optional<AlignmentLinks> links; // empty when alignment is unavailable
    std::string error;
};

class AlignmentProvider {
  public:
    virtual ~AlignmentProvider() = default;

    // One result per pair, in order. Batches must arrive in corpus order.
    virtual std::vector<AlignmentResult> align_batch(std::span<const SentencePair> pairs) = 0;

    virtual std::string_view name() const noexcept = 0;
};

AlignmentResult align(const SentencePair& pair, AlignmentProvider& provider);

class DiagonalProvider final : public AlignmentProvider {
  public:
    std::vector<AlignmentResult> align_batch(std::span<const SentencePair> pairs) override;
    std::string_view name() const noexcept override { return "diagonal"; }
};

// Pharaoh file line-aligned with the corpus: line k holds the links of the
// pair with id k. Pair ids must be increasing across calls.
class FileProvider final : public AlignmentProvider {
  public:
    explicit FileProvider(const std::filesystem::path& path);
    // Non-owning; the stream must outlive the provider.
    explicit FileProvider(std::istream& in);
    ~FileProvider() override;

    std::vector<AlignmentResult> align_batch(std::span<const SentencePair> pairs) override;
    std::string_view name() const noexcept override { return "file"; }

  private:
    std::unique_ptr<std::istream> owned_;
    std::istream* in_;
    std::string origin_;
    std::uint64_t next_line_ = 0;
    std::string line_;
};

struct SidecarOptions {
    // Exactly one of command (spawned through /bin/sh, speaking on
    // stdin/stdout) or socket (path of a listening unix socket) is set.
    std::string command;
    std::string socket;
    std::chrono::milliseconds timeout{10000};
    std::size_t connections = 1;
};

// Client of the line-delimited JSON aligner protocol:
//   request  {"id": n, "src": [tokens], "tgt": [tokens]}
//   response {"id": n, "links": [[i, j], ...]}  or  {"id": n, "error": "..."}
// One request is outstanding per connection. A timeout or an error response
// marks the pair unavailable; a mismatched id, malformed payload or link out
// of bounds is a protocol violation and throws IoError.
class SidecarProvider final : public AlignmentProvider {
  public:
    explicit SidecarProvider(SidecarOptions options);
    ~SidecarProvider() override;

    std::vector<AlignmentResult> align_batch(std::span<const SentencePair> pairs) override;
    std::string_view name() const noexcept override { return "sidecar"; }

    // Number of pairs that timed out so far.
    std::size_t timeouts() const noexcept;

    class Connection;

  private:
    SidecarOptions options_;
    std::vector<std::unique_ptr<Connection>> connections_;
};

} // namespace tailcheck

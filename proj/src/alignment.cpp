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

#include "tailcheck/alignment.hpp"

#include "tailcheck/error.hpp"
#include "tailcheck/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <exception>
#include <fstream>
#include <istream>
#include <thread>

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace tailcheck {

namespace {

std::optional<std::uint32_t> parse_index(std::string_view s) {
    if (s.empty() || s.size() > 9) return std::nullopt;
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string errno_text() { return std::strerror(errno); }

std::vector<std::string_view> token_views(std::string_view s) {
    std::vector<std::string_view> out;
    for (const auto& t : text::whitespace_tokens(s)) out.push_back(t.view);
    return out;
}

// Pairs with an empty side need no aligner.
std::optional<AlignmentResult> trivial_alignment(std::size_t src_len, std::size_t tgt_len) {
    if (src_len != 0 && tgt_len != 0) return std::nullopt;
    return AlignmentResult{AlignmentLinks({}, src_len, tgt_len), {}};
}

} // namespace

AlignmentLinks::AlignmentLinks(std::vector<Link> links, std::size_t src_len, std::size_t tgt_len)
    : links_(std::move(links)), src_len_(src_len), tgt_len_(tgt_len) {
    for (const auto& [i, j] : links_) {
        if (i >= src_len_ || j >= tgt_len_) {
            throw AlignmentError("link " + std::to_string(i) + "-" + std::to_string(j) + " out of range for lengths (" +
                                 std::to_string(src_len_) + ", " + std::to_string(tgt_len_) + ")");
        }
    }
    std::sort(links_.begin(), links_.end());
    links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

std::vector<bool> AlignmentLinks::aligned_sources() const {
    std::vector<bool> out(src_len_, false);
    for (const auto& l : links_) out[l.first] = true;
    return out;
}

AlignmentLinks parse_pharaoh(std::string_view line, std::size_t src_len, std::size_t tgt_len) {
    std::vector<AlignmentLinks::Link> links;
    for (const auto& tok : text::whitespace_tokens(line)) {
        auto dash = tok.view.find('-');
        std::optional<std::uint32_t> i, j;
        if (dash != std::string_view::npos) {
            i = parse_index(tok.view.substr(0, dash));
            j = parse_index(tok.view.substr(dash + 1));
        }
        if (!i || !j) throw AlignmentError("malformed link '" + std::string(tok.view) + "'");
        links.emplace_back(*i, *j);
    }
    return AlignmentLinks(std::move(links), src_len, tgt_len);
}

std::string to_pharaoh(const AlignmentLinks& links) {
    std::string out;
    for (const auto& [i, j] : links.links()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(i) + "-" + std::to_string(j);
    }
    return out;
}

AlignmentLinks diagonal_links(std::size_t src_len, std::size_t tgt_len) {
    std::vector<AlignmentLinks::Link> links;
    for (std::size_t i = 0; i < std::min(src_len, tgt_len); ++i) {
        links.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i));
    }
    return AlignmentLinks(std::move(links), src_len, tgt_len);
}

AlignmentResult align(const SentencePair& pair, AlignmentProvider& provider) {
    auto results = provider.align_batch(std::span(&pair, 1));
    if (results.size() != 1) throw InvariantError("alignment provider returned a wrong result count");
    return std::move(results.front());
}

std::vector<AlignmentResult> DiagonalProvider::align_batch(std::span<const SentencePair> pairs) {
    std::vector<AlignmentResult> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        out.push_back({diagonal_links(text::count_tokens(p.source), text::count_tokens(p.target)), {}});
    }
    return out;
}

FileProvider::FileProvider(const std::filesystem::path& path)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)), in_(owned_.get()), origin_(path.string()) {
    if (!*owned_) throw IoError("cannot open alignment file '" + origin_ + "'");
}

FileProvider::FileProvider(std::istream& in) : in_(&in), origin_("<stream>") {}

FileProvider::~FileProvider() = default;

std::vector<AlignmentResult> FileProvider::align_batch(std::span<const SentencePair> pairs) {
    std::vector<AlignmentResult> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (p.id < next_line_) {
            throw InvariantError("alignment requested for pair " + std::to_string(p.id) + " out of corpus order");
        }
        while (next_line_ <= p.id) {
            if (!std::getline(*in_, line_)) {
                if (in_->bad()) throw IoError("read error in alignment file '" + origin_ + "'");
                throw IoError("alignment file '" + origin_ + "' ended after " + std::to_string(next_line_) +
                              " lines, before corpus line " + std::to_string(p.id));
            }
            ++next_line_;
        }
        if (!line_.empty() && line_.back() == '\r') line_.pop_back();
        try {
            out.push_back({parse_pharaoh(line_, text::count_tokens(p.source), text::count_tokens(p.target)), {}});
        } catch (const AlignmentError& e) {
            out.push_back({std::nullopt, "pair " + std::to_string(p.id) + ": " + e.what()});
        }
    }
    return out;
}

class SidecarProvider::Connection {
  public:
    explicit Connection(const SidecarOptions& options) : options_(options) {}
    Connection(const Connection&) = delete;
    Connection& operator=(const Connection&) = delete;
    ~Connection() { shutdown(false); }

    AlignmentResult request(const SentencePair& p) {
        auto src = token_views(p.source);
        auto tgt = token_views(p.target);
        if (auto r = trivial_alignment(src.size(), tgt.size())) return std::move(*r);
        if (fd_ < 0) open();

        nlohmann::json req;
        req["id"] = p.id;
        req["src"] = src;
        req["tgt"] = tgt;
        auto payload = req.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
        payload += '\n';
        send_all(payload);

        auto line = read_line();
        if (!line) {
            ++timeouts_;
            shutdown(true);
            return {std::nullopt, "pair " + std::to_string(p.id) + ": aligner timed out after " +
                                      std::to_string(options_.timeout.count()) + " ms"};
        }
        return decode(p.id, *line, src.size(), tgt.size());
    }

    std::size_t timeouts() const noexcept { return timeouts_; }

  private:
    void open() {
        if (!options_.command.empty()) {
            spawn();
        } else {
            dial();
        }
    }

    void spawn() {
        int sv[2];
        if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
            throw IoError("cannot create aligner channel: " + errno_text());
        }
        posix_spawn_file_actions_t actions;
        posix_spawn_file_actions_init(&actions);
        posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
        posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);
        std::string sh = "sh", flag = "-c", cmd = options_.command;
        char* argv[] = {sh.data(), flag.data(), cmd.data(), nullptr};
        pid_t pid = -1;
        int rc = ::posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv, environ);
        posix_spawn_file_actions_destroy(&actions);
        ::close(sv[1]);
        if (rc != 0) {
            ::close(sv[0]);
            throw IoError("cannot start aligner '" + options_.command + "': " + std::strerror(rc));
        }
        fd_ = sv[0];
        pid_ = pid;
    }

    void dial() {
        sockaddr_un addr{};
        addr.sun_family = AF_UNIX;
        if (options_.socket.size() >= sizeof(addr.sun_path)) {
            throw ConfigError("aligner socket path too long: " + options_.socket);
        }
        std::memcpy(addr.sun_path, options_.socket.c_str(), options_.socket.size() + 1);
        int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
        if (fd < 0) throw IoError("cannot create socket: " + errno_text());
        if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
            auto msg = errno_text();
            ::close(fd);
            throw IoError("cannot connect to aligner socket '" + options_.socket + "': " + msg);
        }
        fd_ = fd;
    }

    // Closes the channel. A spawned aligner gets a short grace period to exit
    // on EOF unless force is set.
    void shutdown(bool force) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
        buf_.clear();
        if (pid_ <= 0) return;
        int status = 0;
        if (!force) {
            for (int i = 0; i < 50; ++i) {
                if (::waitpid(pid_, &status, WNOHANG) == pid_) {
                    pid_ = -1;
                    return;
                }
                std::this_thread::sleep_for(std::chrono::milliseconds(10));
            }
        }
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
        pid_ = -1;
    }

    void send_all(std::string_view data) {
        while (!data.empty()) {
            auto n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
            if (n < 0) {
                if (errno == EINTR) continue;
                auto msg = errno_text();
                shutdown(true);
                throw IoError("aligner connection failed while sending: " + msg);
            }
            data.remove_prefix(static_cast<std::size_t>(n));
        }
    }

    // Next response line, or nullopt on timeout.
    std::optional<std::string> read_line() {
        auto deadline = std::chrono::steady_clock::now() + options_.timeout;
        while (true) {
            if (auto nl = buf_.find('\n'); nl != std::string::npos) {
                std::string line = buf_.substr(0, nl);
                buf_.erase(0, nl + 1);
                return line;
            }
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
            if (left.count() <= 0) return std::nullopt;
            pollfd pfd{fd_, POLLIN, 0};
            int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
            if (rc < 0) {
                if (errno == EINTR) continue;
                throw IoError("aligner connection failed: " + errno_text());
            }
            if (rc == 0) return std::nullopt;
            char chunk[4096];
            auto n = ::recv(fd_, chunk, sizeof(chunk), 0);
            if (n < 0) {
                if (errno == EINTR) continue;
                auto msg = errno_text();
                shutdown(true);
                throw IoError("aligner connection failed while reading: " + msg);
            }
            if (n == 0) {
                shutdown(true);
                throw IoError("aligner closed the connection");
            }
            buf_.append(chunk, static_cast<std::size_t>(n));
        }
    }

    AlignmentResult decode(PairId id, const std::string& line, std::size_t src_len, std::size_t tgt_len) {
        auto violation = [&](const std::string& what) {
            shutdown(true);
            return IoError("aligner protocol violation (" + what + ") in response: " + line);
        };
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw violation("malformed record");
        auto it = j.find("id");
        if (it == j.end() || !it->is_number_unsigned()) throw violation("missing id");
        if (it->get<std::uint64_t>() != id) throw violation("expected id " + std::to_string(id));
        if (auto err = j.find("error"); err != j.end()) {
            auto msg = err->is_string() ? err->get<std::string>() : err->dump();
            return {std::nullopt, "pair " + std::to_string(id) + ": aligner error: " + msg};
        }
        auto links = j.find("links");
        if (links == j.end() || !links->is_array()) throw violation("missing links");
        std::vector<AlignmentLinks::Link> out;
        out.reserve(links->size());
        for (const auto& l : *links) {
            if (!l.is_array() || l.size() != 2 || !l[0].is_number_unsigned() || !l[1].is_number_unsigned()) {
                throw violation("malformed link");
            }
            auto a = l[0].get<std::uint64_t>(), b = l[1].get<std::uint64_t>();
            if (a >= src_len || b >= tgt_len) throw violation("link out of bounds");
            out.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        }
        return {AlignmentLinks(std::move(out), src_len, tgt_len), {}};
    }

    const SidecarOptions& options_;
    int fd_ = -1;
    pid_t pid_ = -1;
    std::string buf_;
    std::size_t timeouts_ = 0;
};

SidecarProvider::SidecarProvider(SidecarOptions options) : options_(std::move(options)) {
    if (options_.command.empty() == options_.socket.empty()) {
        throw ConfigError("sidecar aligner needs exactly one of a command or a socket path");
    }
    if (options_.connections == 0) throw ConfigError("sidecar aligner needs at least one connection");
    if (options_.timeout.count() <= 0) throw ConfigError("sidecar aligner timeout must be positive");
    for (std::size_t i = 0; i < options_.connections; ++i) {
        connections_.push_back(std::make_unique<Connection>(options_));
    }
}

SidecarProvider::~SidecarProvider() = default;

std::size_t SidecarProvider::timeouts() const noexcept {
    std::size_t n = 0;
    for (const auto& c : connections_) n += c->timeouts();
    return n;
}

std::vector<AlignmentResult> SidecarProvider::align_batch(std::span<const SentencePair> pairs) {
    std::vector<AlignmentResult> out(pairs.size());
    std::size_t k = std::min(connections_.size(), pairs.size());
    if (k <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = connections_[0]->request(pairs[i]);
        return out;
    }
    std::vector<std::exception_ptr> errors(k);
    {
        std::vector<std::jthread> workers;
        std::size_t per = (pairs.size() + k - 1) / k;
        for (std::size_t c = 0; c < k; ++c) {
            workers.emplace_back([&, c] {
                try {
                    for (std::size_t i = c * per; i < std::min(pairs.size(), (c + 1) * per); ++i) {
                        out[i] = connections_[c]->request(pairs[i]);
                    }
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace tailcheck

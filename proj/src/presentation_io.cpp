#include "trilab/presentation_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace trilab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

int parse_signed_index(const std::string& tok, int line_no) {
    std::string_view body = tok;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc() || ptr != body.data() + body.size() || value == 0)
        throw std::runtime_error("presentation: bad letter '" + tok + "' on line " +
                                 std::to_string(line_no));
    return value;
}

}  // namespace

std::string print_presentation(const Presentation& pres,
                               const std::vector<std::string>& header_comments) {
    std::string out = "n=" + std::to_string(pres.n) + "\n";
    for (const std::string& c : header_comments) out += "# " + c + "\n";
    for (const Word3& w : pres.relators) {
        for (int i = 0; i < 3; ++i) {
            const SignedGenerator& l = w.letters[static_cast<std::size_t>(i)];
            out += (l.sign > 0 ? '+' : '-');
            out += std::to_string(l.index);
            out += (i < 2 ? " " : "");
        }
        out += "\n";
    }
    return out;
}

Presentation parse_presentation(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    Presentation pres;
    bool have_n = false;
    std::unordered_set<std::uint64_t> member;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!have_n) {
            if (!line.starts_with("n="))
                throw std::runtime_error("presentation: first line must be 'n=<int>'");
            int n = 0;
            const auto* begin = line.data() + 2;
            auto [ptr, ec] = std::from_chars(begin, line.data() + line.size(), n);
            if (ec != std::errc() || ptr != line.data() + line.size() || n < 1)
                throw std::runtime_error("presentation: bad generator count on line " +
                                         std::to_string(line_no));
            pres.n = n;
            have_n = true;
            continue;
        }
        std::istringstream ls{std::string(line)};
        std::string t1, t2, t3, extra;
        if (!(ls >> t1 >> t2 >> t3) || (ls >> extra))
            throw std::runtime_error("presentation: expected three letters on line " +
                                     std::to_string(line_no));
        Word3 w;
        const std::string toks[3] = {t1, t2, t3};
        for (int i = 0; i < 3; ++i) {
            const int v = parse_signed_index(toks[i], line_no);
            const int index = v < 0 ? -v : v;
            if (index > pres.n)
                throw std::runtime_error("presentation: letter index out of range on line " +
                                         std::to_string(line_no));
            w.letters[static_cast<std::size_t>(i)] = {index, v < 0 ? -1 : +1};
        }
        if (!is_cyclically_reduced(w))
            throw std::runtime_error("presentation: relator on line " + std::to_string(line_no) +
                                     " is not cyclically reduced");
        if (!member.insert(pack_word(w)).second)
            throw std::runtime_error("presentation: duplicate relator on line " +
                                     std::to_string(line_no));
        pres.relators.push_back(w);
    }
    if (!have_n) throw std::runtime_error("presentation: missing 'n=<int>' line");
    return pres;
}

Presentation load_presentation_file(const std::string& path) {
    return parse_presentation(read_text_file(path));
}

void write_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace trilab

#include "netgeom/ingest.hpp"

#include "netgeom/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

namespace netgeom {

namespace {

constexpr long kMaxNodeId = 1000000; // sanity cap against absurd ids

void warn(std::vector<ParseDiagnostic>* diags, long line, std::string msg) {
    if (diags)
        diags->push_back({line, std::move(msg), ParseDiagnostic::Severity::Warning});
}

bool parse_long(const std::string& tok, long& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (errno != 0 || end != tok.c_str() + tok.size()) return false;
    out = v;
    return true;
}

bool parse_double(const std::string& tok, double& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(tok.c_str(), &end);
    if (errno != 0 || end != tok.c_str() + tok.size()) return false;
    out = v;
    return true;
}

} // namespace

Graph parse_edge_list(std::string_view text, std::vector<ParseDiagnostic>* diags) {
    struct EdgeRec {
        long u, v;
        double w;
    };
    std::vector<EdgeRec> edges;
    std::map<std::pair<long, long>, std::size_t> seen;
    long max_id = -1;
    long n_hint = -1;

    std::istringstream in{std::string(text)};
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) {
            // "# n=N" header pins the node count
            std::string comment = line.substr(pos + 1);
            std::istringstream cs(comment);
            std::string key;
            if (cs >> key && key.rfind("n=", 0) == 0) {
                long v;
                if (parse_long(key.substr(2), v) && v >= 0) n_hint = v;
            }
            line.resize(pos);
        }
        std::istringstream ls(line);
        std::string a, b, c, extra;
        if (!(ls >> a)) continue; // blank
        if (!(ls >> b)) throw ParseError("edge line needs at least two node ids", line_no);
        bool has_w = static_cast<bool>(ls >> c);
        if (ls >> extra) throw ParseError("trailing tokens on edge line", line_no);

        long u, v;
        if (!parse_long(a, u) || !parse_long(b, v))
            throw ParseError("non-integer node id", line_no);
        if (u < 0 || v < 0) throw ParseError("negative node id", line_no);
        if (u > kMaxNodeId || v > kMaxNodeId) throw ParseError("node id too large", line_no);
        if (u == v) throw ParseError("self-loop", line_no);

        double w = 1.0;
        if (has_w) {
            if (!parse_double(c, w)) throw ParseError("malformed edge weight", line_no);
            if (!(w > 0.0)) throw ParseError("edge weight must be positive", line_no);
        }

        max_id = std::max({max_id, u, v});
        auto key = std::minmax(u, v);
        auto it = seen.find(key);
        if (it != seen.end()) {
            warn(diags, line_no, "duplicate edge, last weight wins");
            edges[it->second].w = w;
        } else {
            seen.emplace(key, edges.size());
            edges.push_back({key.first, key.second, w});
        }
    }

    long n = std::max(n_hint, max_id + 1);
    if (n < 0) n = 0;
    Graph g(static_cast<int>(n));
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw ParseError("edge id exceeds declared node count"); // only when n_hint lies low
        g.set_edge(static_cast<int>(e.u), static_cast<int>(e.v), e.w);
    }
    return g;
}

namespace {

struct GmlToken {
    enum class Kind { Open, Close, String, Atom, End } kind;
    std::string text;
    long line;
};

class GmlLexer {
public:
    explicit GmlLexer(std::string_view text) : text_(text) {}

    GmlToken next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
        if (pos_ >= text_.size()) return {GmlToken::Kind::End, "", line_};
        char c = text_[pos_];
        if (c == '[') {
            ++pos_;
            return {GmlToken::Kind::Open, "[", line_};
        }
        if (c == ']') {
            ++pos_;
            return {GmlToken::Kind::Close, "]", line_};
        }
        if (c == '"') {
            ++pos_;
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') ++line_;
                s += text_[pos_++];
            }
            if (pos_ >= text_.size()) throw ParseError("unterminated GML string", line_);
            ++pos_;
            return {GmlToken::Kind::String, s, line_};
        }
        std::string s;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '[' && text_[pos_] != ']')
            s += text_[pos_++];
        return {GmlToken::Kind::Atom, s, line_};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    long line_ = 1;
};

struct GmlNodeRec {
    long id;
};
struct GmlEdgeRec {
    long source = -1, target = -1;
    double value = 1.0;
    bool has_value = false;
    long line = 0;
};

class GmlParser {
public:
    GmlParser(std::string_view text, std::vector<ParseDiagnostic>* diags)
        : lex_(text), diags_(diags) {}

    Graph parse() {
        // scan top-level keys until the graph block; everything else skipped
        for (;;) {
            GmlToken t = lex_.next();
            if (t.kind == GmlToken::Kind::End)
                throw ParseError("no graph [ ... ] block found");
            if (t.kind == GmlToken::Kind::Close)
                throw ParseError("unbalanced ']'", t.line);
            if (t.kind == GmlToken::Kind::Open)
                throw ParseError("unexpected '['", t.line);
            if (t.kind == GmlToken::Kind::Atom && t.text == "graph") {
                expect_open();
                parse_graph_block();
                break;
            }
            skip_value();
        }
        // nothing but well-formed key/value pairs may follow the graph block
        for (;;) {
            GmlToken t = lex_.next();
            if (t.kind == GmlToken::Kind::End) break;
            if (t.kind != GmlToken::Kind::Atom)
                throw ParseError("unbalanced bracket after graph block", t.line);
            skip_value();
        }
        return build();
    }

private:
    void expect_open() {
        GmlToken t = lex_.next();
        if (t.kind != GmlToken::Kind::Open)
            throw ParseError("expected '[' after key", t.line);
    }

    // consumes one value: atom, string or bracketed block (recursively)
    void skip_value() {
        GmlToken t = lex_.next();
        if (t.kind == GmlToken::Kind::Atom || t.kind == GmlToken::Kind::String) return;
        if (t.kind == GmlToken::Kind::Open) {
            int depth = 1;
            while (depth > 0) {
                GmlToken u = lex_.next();
                if (u.kind == GmlToken::Kind::End)
                    throw ParseError("unbalanced '[' in skipped block", t.line);
                if (u.kind == GmlToken::Kind::Open) ++depth;
                if (u.kind == GmlToken::Kind::Close) --depth;
            }
            return;
        }
        throw ParseError("expected a value", t.line);
    }

    void parse_graph_block() {
        for (;;) {
            GmlToken t = lex_.next();
            if (t.kind == GmlToken::Kind::End)
                throw ParseError("unbalanced '[': graph block never closed", t.line);
            if (t.kind == GmlToken::Kind::Close) return;
            if (t.kind != GmlToken::Kind::Atom)
                throw ParseError("expected key inside graph block", t.line);
            if (t.text == "node") {
                expect_open();
                parse_node_block(t.line);
            } else if (t.text == "edge") {
                expect_open();
                parse_edge_block(t.line);
            } else {
                skip_value();
            }
        }
    }

    void parse_node_block(long open_line) {
        std::optional<long> id;
        for (;;) {
            GmlToken t = lex_.next();
            if (t.kind == GmlToken::Kind::End)
                throw ParseError("unbalanced '[' in node block", open_line);
            if (t.kind == GmlToken::Kind::Close) break;
            if (t.kind != GmlToken::Kind::Atom)
                throw ParseError("expected key inside node block", t.line);
            if (t.text == "id") {
                GmlToken v = lex_.next();
                long parsed;
                if (v.kind != GmlToken::Kind::Atom || !parse_long(v.text, parsed))
                    throw ParseError("node id must be an integer", v.line);
                id = parsed;
            } else {
                skip_value();
            }
        }
        if (!id) throw ParseError("node block without id", open_line);
        if (index_of_.count(*id)) throw ParseError("duplicate node id", open_line);
        index_of_[*id] = static_cast<long>(nodes_.size());
        nodes_.push_back({*id});
    }

    void parse_edge_block(long open_line) {
        GmlEdgeRec e;
        e.line = open_line;
        for (;;) {
            GmlToken t = lex_.next();
            if (t.kind == GmlToken::Kind::End)
                throw ParseError("unbalanced '[' in edge block", open_line);
            if (t.kind == GmlToken::Kind::Close) break;
            if (t.kind != GmlToken::Kind::Atom)
                throw ParseError("expected key inside edge block", t.line);
            if (t.text == "source" || t.text == "target") {
                GmlToken v = lex_.next();
                long parsed;
                if (v.kind != GmlToken::Kind::Atom || !parse_long(v.text, parsed))
                    throw ParseError("edge endpoint must be an integer", v.line);
                (t.text == "source" ? e.source : e.target) = parsed;
            } else if (t.text == "value") {
                GmlToken v = lex_.next();
                double parsed;
                if (v.kind != GmlToken::Kind::Atom || !parse_double(v.text, parsed))
                    throw ParseError("edge value must be numeric", v.line);
                e.value = parsed;
                e.has_value = true;
            } else {
                skip_value();
            }
        }
        if (e.source < 0 || e.target < 0)
            throw ParseError("edge block missing source/target", open_line);
        edges_.push_back(e);
    }

    Graph build() {
        const int n = static_cast<int>(nodes_.size());
        Graph g(n);
        std::map<std::pair<long, long>, bool> placed;
        for (const auto& e : edges_) {
            auto su = index_of_.find(e.source);
            auto sv = index_of_.find(e.target);
            if (su == index_of_.end() || sv == index_of_.end())
                throw ParseError("edge references unknown node id", e.line);
            if (su->second == sv->second) throw ParseError("self-loop", e.line);
            if (e.has_value && !(e.value > 0.0))
                throw ParseError("edge value must be positive", e.line);
            auto key = std::minmax(su->second, sv->second);
            if (placed.count(key)) warn(diags_, e.line, "duplicate edge, last value wins");
            placed[key] = true;
            g.set_edge(static_cast<int>(key.first), static_cast<int>(key.second), e.value);
        }
        return g;
    }

    GmlLexer lex_;
    std::vector<ParseDiagnostic>* diags_;
    std::vector<GmlNodeRec> nodes_;
    std::map<long, long> index_of_;
    std::vector<GmlEdgeRec> edges_;
};

} // namespace

Graph parse_gml(std::string_view text, std::vector<ParseDiagnostic>* diags) {
    return GmlParser(text, diags).parse();
}

std::string write_edge_list(const Graph& g) {
    std::string out = "# n=" + std::to_string(g.n()) + "\n";
    char buf[64];
    for (int i = 0; i < g.n(); ++i) {
        for (int j = i + 1; j < g.n(); ++j) {
            double w = g.adj(i, j);
            if (!(w > 0.0)) continue;
            if (w == 1.0) {
                std::snprintf(buf, sizeof buf, "%d %d\n", i, j);
            } else {
                std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, j, w);
            }
            out += buf;
        }
    }
    return out;
}

} // namespace netgeom

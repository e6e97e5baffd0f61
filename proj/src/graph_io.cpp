#include "refill/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "refill/errors.hpp"
#include "refill/rng.hpp"

namespace refill {

namespace {

struct NumberedLine {
    long number = 0;  // 1-based in the source
    std::string text;
};

std::vector<NumberedLine> read_lines(std::istream& in) {
    std::vector<NumberedLine> lines;
    std::string text;
    long number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        lines.push_back({number, std::move(text)});
    }
    return lines;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

bool blank(const std::string& line) {
    for (const char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    return true;
}

char first_char(const std::string& line) {
    for (const char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) return ch;
    return '\0';
}

long parse_long(const std::string& tok, long line_number, const std::string& what) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw ParseError("expected integer " + what + ", got '" + tok + "'", line_number);
    }
    if (used != tok.size())
        throw ParseError("expected integer " + what + ", got '" + tok + "'", line_number);
    return value;
}

LoadedGraph parse_edge_list(const std::vector<NumberedLine>& lines, const std::string& name) {
    LoadedGraph out;
    out.name = name;
    std::unordered_map<std::string, int> ids;
    std::vector<Edge> edges;
    std::vector<std::int64_t> edge_lines;
    const auto intern = [&](const std::string& label) {
        const auto [it, inserted] = ids.try_emplace(label, static_cast<int>(out.labels.size()));
        if (inserted) out.labels.push_back(label);
        return it->second;
    };

    for (const auto& [number, text] : lines) {
        if (blank(text)) continue;
        const char head = first_char(text);
        if (head == '#' || head == 'c') continue;
        const auto tokens = tokenize(text);
        if (tokens.size() == 1) {
            intern(tokens[0]);  // declares a vertex without edges
            continue;
        }
        if (tokens.size() != 2)
            throw ParseError("edge line needs one or two labels, got " +
                                 std::to_string(tokens.size()),
                             number);
        const int u = intern(tokens[0]);
        const int v = intern(tokens[1]);
        if (u == v) {
            ++out.dropped_self_loops;
            continue;
        }
        edges.emplace_back(u, v);
        edge_lines.push_back(number);
    }
    if (out.labels.empty()) throw ParseError(name + ": no vertices found");

    out.graph = Graph(static_cast<int>(out.labels.size()));
    for (const auto& [u, v] : edges)
        if (!out.graph.add_edge(u, v)) ++out.dropped_duplicates;
    return out;
}

LoadedGraph parse_matrix_pattern(const std::vector<NumberedLine>& lines, const std::string& name) {
    LoadedGraph out;
    out.name = name;

    std::size_t pos = 0;
    const auto next_payload = [&]() -> const NumberedLine* {
        while (pos < lines.size()) {
            const NumberedLine& line = lines[pos++];
            if (blank(line.text) || first_char(line.text) == '%') continue;
            return &line;
        }
        return nullptr;
    };

    const NumberedLine* dims = next_payload();
    if (!dims) throw ParseError(name + ": missing dimensions line");
    const auto dim_tokens = tokenize(dims->text);
    if (dim_tokens.size() != 3)
        throw ParseError("dimensions line needs 'rows cols nnz'", dims->number);
    const long rows = parse_long(dim_tokens[0], dims->number, "row count");
    const long cols = parse_long(dim_tokens[1], dims->number, "column count");
    const long nnz = parse_long(dim_tokens[2], dims->number, "entry count");
    if (rows != cols) throw ParseError("pattern must be square, got " + std::to_string(rows) +
                                           "x" + std::to_string(cols),
                                       dims->number);
    if (rows <= 0) throw ParseError(name + ": pattern has no rows", dims->number);
    if (nnz < 0) throw ParseError("negative entry count", dims->number);

    out.graph = Graph(static_cast<int>(rows));
    for (long k = 0; k < nnz; ++k) {
        const NumberedLine* entry = next_payload();
        if (!entry)
            throw ParseError(name + ": expected " + std::to_string(nnz) + " entries, found " +
                             std::to_string(k));
        const auto tokens = tokenize(entry->text);
        if (tokens.size() < 2) throw ParseError("entry line needs 'row col [value]'", entry->number);
        const long i = parse_long(tokens[0], entry->number, "row index");
        const long j = parse_long(tokens[1], entry->number, "column index");
        if (i < 1 || i > rows || j < 1 || j > rows)
            throw ParseError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") outside 1.." + std::to_string(rows),
                             entry->number);
        if (i == j) {
            ++out.dropped_self_loops;
            continue;
        }
        if (!out.graph.add_edge(static_cast<int>(i) - 1, static_cast<int>(j) - 1))
            ++out.dropped_duplicates;
    }
    if (const NumberedLine* extra = next_payload())
        throw ParseError("unexpected content after the declared entries", extra->number);

    out.labels.reserve(static_cast<std::size_t>(rows));
    for (long v = 1; v <= rows; ++v) out.labels.push_back(std::to_string(v));  // 1-based ids
    return out;
}

}  // namespace

LoadedGraph parse_graph(std::istream& in, GraphFormat format, const std::string& name) {
    const auto lines = read_lines(in);
    if (format == GraphFormat::Auto) {
        format = GraphFormat::EdgeList;
        for (const auto& [number, text] : lines) {
            if (blank(text)) continue;
            if (first_char(text) == '%') format = GraphFormat::MatrixPattern;
            break;
        }
    }
    return format == GraphFormat::EdgeList ? parse_edge_list(lines, name)
                                           : parse_matrix_pattern(lines, name);
}

LoadedGraph load_graph(const std::string& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_graph(in, format, path);
}

void save_edge_list(const Graph& g, const std::string& path,
                    std::span<const std::string> labels,
                    std::span<const std::string> header_comments) {
    if (!labels.empty() && static_cast<int>(labels.size()) != g.num_vertices())
        throw ConfigError("save_edge_list: label count does not match vertex count");
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    for (const auto& line : header_comments) out << "# " << line << "\n";
    out << "# " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
    const auto label_of = [&](int v) {
        return labels.empty() ? std::to_string(v) : labels[static_cast<std::size_t>(v)];
    };
    // A parser treats lines starting with '#' or 'c' as comments and uses a
    // leading '%' for format detection, so such a label can never open a line.
    const auto line_safe = [](const std::string& s) {
        return !s.empty() && s[0] != '#' && s[0] != 'c' && s[0] != '%';
    };
    // Isolated vertices are declared on their own line.
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) == 0) {
            const std::string lv = label_of(v);
            if (!line_safe(lv))
                throw ConfigError("save_edge_list: label '" + lv +
                                  "' cannot start a line in edge-list format");
            out << lv << "\n";
            continue;
        }
        for (const int u : g.neighbors(v)) {
            if (u <= v) continue;
            std::string a = label_of(v);
            std::string b = label_of(u);
            if (!line_safe(a)) std::swap(a, b);
            if (!line_safe(a))
                throw ConfigError("save_edge_list: labels '" + b + "' and '" + a +
                                  "' cannot start a line in edge-list format");
            out << a << " " << b << "\n";
        }
    }
    if (!out) throw ParseError("write failed for '" + path + "'");
}

void write_ordering_file(const std::string& path, const Ordering& ordering,
                         std::span<const std::string> labels,
                         std::span<const std::string> header_comments) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    for (const auto& line : header_comments) out << "# " << line << "\n";
    out << "# fill=" << ordering.fill_cost << "\n";
    for (const int v : ordering.perm) {
        if (labels.empty())
            out << v << "\n";
        else
            out << labels[static_cast<std::size_t>(v)] << "\n";
    }
    if (!out) throw ParseError("write failed for '" + path + "'");
}

void write_label_mapping(const std::string& path, std::span<const std::string> labels) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    for (std::size_t id = 0; id < labels.size(); ++id) out << id << " " << labels[id] << "\n";
    if (!out) throw ParseError("write failed for '" + path + "'");
}

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    return labels;
}

Graph gen_grid(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw ConfigError("gen_grid: dimensions must be positive, got " + std::to_string(rows) +
                          "x" + std::to_string(cols));
    Graph g(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const int v = r * cols + c;
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, v + cols);
        }
    return g;
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
    if (n < 1) throw ConfigError("gen_gnp: need at least one vertex");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("gen_gnp: p must be within [0, 1]");
    Rng rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

}  // namespace refill

#include "qgroupoid/groupoid_io.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "qgroupoid/error.hpp"

namespace qgroupoid {

namespace {

constexpr std::size_t kMissing = std::numeric_limits<std::size_t>::max();
constexpr std::string_view kNotComposable = "∗";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_cells(std::string_view row) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto bar = row.find('|', start);
        out.emplace_back(trim(row.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return out;
}

std::size_t display_width(std::string_view s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

struct Declared {
    std::vector<std::string> outcomes;
    std::vector<std::string> elements;
    std::map<std::string, std::pair<std::string, std::string>> endpoints;
    std::map<std::string, std::string> units;  // outcome -> element
    std::map<std::string, std::string> inverses;
    std::map<std::pair<std::string, std::string>, std::string> compose;
    bool has_table = false;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Declared run() {
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            const auto nl = text_.find('\n', pos);
            std::string_view raw = text_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            ++line_;
            handle(raw);
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        if (decl_.outcomes.empty()) throw ParseError("missing 'outcomes:' line");
        return std::move(decl_);
    }

private:
    [[noreturn]] void error(const std::string& msg, std::size_t column = 1) const {
        throw ParseError(msg, line_, column);
    }

    void handle(std::string_view raw) {
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) {
            in_table_ = false;
            return;
        }
        if (in_table_ && line.find('|') != std::string_view::npos) {
            table_row(line);
            return;
        }
        in_table_ = false;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) error("expected 'directive: ...'");
        const std::string key(trim(line.substr(0, colon)));
        const auto args = split_ws(line.substr(colon + 1));
        const std::size_t arg_col = static_cast<std::size_t>(raw.find(':') + 2);
        if (key == "outcomes") {
            if (args.empty()) error("'outcomes:' needs at least one label", arg_col);
            if (!decl_.outcomes.empty()) error("duplicate 'outcomes:' line");
            decl_.outcomes = args;
        } else if (key == "element") {
            if (args.size() != 3) error("expected 'element: NAME SRC TGT'", arg_col);
            add_element(args[0]);
            decl_.endpoints[args[0]] = {args[1], args[2]};
        } else if (key == "unit") {
            if (args.size() != 2) error("expected 'unit: OUTCOME NAME'", arg_col);
            decl_.units[args[0]] = args[1];
        } else if (key == "inverse") {
            if (args.size() != 2) error("expected 'inverse: NAME NAME'", arg_col);
            decl_.inverses[args[0]] = args[1];
            decl_.inverses[args[1]] = args[0];
        } else if (key == "compose") {
            if (args.size() != 4 || args[2] != "=") error("expected 'compose: BETA ALPHA = GAMMA'", arg_col);
            set_compose(args[0], args[1], args[3]);
        } else if (key == "table") {
            if (!args.empty()) error("'table:' takes no arguments", arg_col);
            in_table_ = true;
            decl_.has_table = true;
            header_.clear();
        } else {
            error("unknown directive '" + key + "'");
        }
    }

    void add_element(const std::string& name) {
        for (const auto& e : decl_.elements)
            if (e == name) return;
        decl_.elements.push_back(name);
    }

    void set_compose(const std::string& beta, const std::string& alpha, const std::string& gamma) {
        auto [it, inserted] = decl_.compose.emplace(std::make_pair(beta, alpha), gamma);
        if (!inserted && it->second != gamma) error("conflicting composition for " + beta + " ∘ " + alpha);
    }

    void table_row(std::string_view line) {
        auto cells = split_cells(line);
        if (header_.empty()) {
            if (cells.size() < 2) error("table header needs at least one column");
            header_.assign(cells.begin() + 1, cells.end());
            for (const auto& h : header_) add_element(h);
            return;
        }
        if (cells.size() != header_.size() + 1)
            error("table row has " + std::to_string(cells.size() - 1) + " cells, expected " +
                  std::to_string(header_.size()));
        const std::string& row = cells[0];
        add_element(row);
        for (std::size_t c = 0; c < header_.size(); ++c) {
            const std::string& cell = cells[c + 1];
            if (cell == kNotComposable || cell == "*") continue;
            set_compose(row, header_[c], cell);
        }
    }

    std::string_view text_;
    std::size_t line_ = 0;
    bool in_table_ = false;
    std::vector<std::string> header_;
    Declared decl_;
};

GroupoidData assemble(const Declared& decl) {
    GroupoidData d;
    d.outcomes = decl.outcomes;
    d.elements = decl.elements;
    const std::size_t n = d.elements.size();
    const std::size_t m = d.outcomes.size();

    std::map<std::string, std::size_t> el, out;
    for (std::size_t i = 0; i < n; ++i) el[d.elements[i]] = i;
    for (std::size_t a = 0; a < m; ++a) out[d.outcomes[a]] = a;
    auto element_index = [&](const std::string& name) {
        auto it = el.find(name);
        if (it == el.end()) throw ValidationError("unknown element " + name);
        return it->second;
    };
    auto outcome_index = [&](const std::string& name) {
        auto it = out.find(name);
        if (it == out.end()) throw ValidationError("unknown outcome " + name);
        return it->second;
    };

    d.compose.assign(n * n, std::nullopt);
    for (const auto& [key, gamma] : decl.compose)
        d.compose[element_index(key.first) * n + element_index(key.second)] = element_index(gamma);
    auto comp = [&](std::size_t b, std::size_t a) { return d.compose[b * n + a]; };

    d.unit_of.assign(m, kMissing);
    for (const auto& [o, u] : decl.units) d.unit_of[outcome_index(o)] = element_index(u);

    d.source.assign(n, kMissing);
    d.target.assign(n, kMissing);
    for (const auto& [name, ends] : decl.endpoints) {
        d.source[element_index(name)] = outcome_index(ends.first);
        d.target[element_index(name)] = outcome_index(ends.second);
    }
    // Endpoints not declared are read off the grid: α ∘ 1_a defined means s(α) = a.
    for (std::size_t i = 0; i < n; ++i) {
        if (d.source[i] != kMissing) continue;
        for (std::size_t a = 0; a < m; ++a) {
            const std::size_t u = d.unit_of[a];
            if (u == kMissing) continue;
            if (comp(i, u)) d.source[i] = a;
            if (comp(u, i)) d.target[i] = a;
        }
        if (d.source[i] == kMissing || d.target[i] == kMissing)
            throw ValidationError("endpoints undefined for " + d.elements[i]);
    }
    for (std::size_t a = 0; a < m; ++a) {
        if (d.unit_of[a] != kMissing) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (d.source[i] == a && d.target[i] == a && comp(i, i) == i) {
                d.unit_of[a] = i;
                break;
            }
        }
    }

    d.inverse.assign(n, kMissing);
    for (const auto& [a, b] : decl.inverses) d.inverse[element_index(a)] = element_index(b);
    for (std::size_t a = 0; a < m; ++a)
        if (const std::size_t u = d.unit_of[a]; u != kMissing && d.inverse[u] == kMissing) d.inverse[u] = u;
    if (decl.has_table) {
        for (std::size_t i = 0; i < n; ++i) {
            if (d.inverse[i] != kMissing || d.unit_of[d.source[i]] == kMissing) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (comp(j, i) == d.unit_of[d.source[i]] && comp(i, j) == d.unit_of[d.target[i]]) {
                    d.inverse[i] = j;
                    break;
                }
            }
        }
    }
    return d;
}

}  // namespace

GroupoidPtr parse_groupoid(std::string_view text) {
    return FiniteGroupoid::create(assemble(Parser(text).run()));
}

GroupoidPtr load_groupoid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open groupoid file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_groupoid(buf.str());
}

std::size_t MultiplicationTable::defined_cells() const {
    std::size_t count = 0;
    for (const auto& row : cells)
        for (const auto& c : row)
            if (c) ++count;
    return count;
}

MultiplicationTable multiplication_table(const FiniteGroupoid& g) {
    MultiplicationTable t;
    const std::size_t n = g.element_count();
    t.labels.assign(g.element_labels().begin(), g.element_labels().end());
    t.cells.assign(n, std::vector<std::optional<std::string>>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (auto v = g.try_compose(element_id(r), element_id(c))) t.cells[r][c] = g.element_label(*v);
    return t;
}

std::string render_table(const FiniteGroupoid& g) {
    const auto table = multiplication_table(g);
    std::size_t width = display_width("∘");
    for (const auto& l : table.labels) width = std::max(width, display_width(l));

    std::ostringstream out;
    auto pad = [&](std::string_view s) {
        out << s;
        for (std::size_t i = display_width(s); i < width; ++i) out << ' ';
    };
    out << "# cell = row ∘ column, " << kNotComposable << " = not composable\n";
    out << "outcomes:";
    for (const auto& o : g.outcome_labels()) out << ' ' << o;
    out << '\n';
    for (std::size_t a = 0; a < g.outcome_count(); ++a)
        out << "unit: " << g.outcome_labels()[a] << ' ' << g.element_label(g.unit(outcome_id(a))) << '\n';
    out << "table:\n";
    pad("∘");
    for (const auto& l : table.labels) {
        out << " | ";
        pad(l);
    }
    out << '\n';
    for (std::size_t r = 0; r < table.labels.size(); ++r) {
        pad(table.labels[r]);
        for (const auto& cell : table.cells[r]) {
            out << " | ";
            pad(cell ? std::string_view(*cell) : kNotComposable);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qgroupoid

#include "steiner/stp.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace steiner {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

StpDocument tokenize_stp(std::istream& in) {
    StpDocument doc;
    std::string raw, section;
    int lineno = 0;
    bool seen_any = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;
        std::string head = lower(toks[0]);
        if (!seen_any && toks.size() >= 2 && head == "33d32945") {
            seen_any = true;  // magic header
            continue;
        }
        seen_any = true;
        if (head == "section") {
            if (toks.size() < 2) fail(lineno, "SECTION without a name");
            if (!section.empty()) fail(lineno, "nested SECTION");
            section = lower(toks[1]);
            doc.sections[section];  // create even if empty
            continue;
        }
        if (head == "end") {
            if (section.empty()) fail(lineno, "END outside of a section");
            section.clear();
            continue;
        }
        if (head == "eof") break;
        if (section.empty()) fail(lineno, "content outside of a section");
        doc.sections[section].push_back({lineno, std::move(toks)});
    }
    if (!section.empty())
        throw ParseError("unterminated SECTION '" + section + "'");
    return doc;
}

Instance parse_stp(std::istream& in, std::vector<std::string>* warnings) {
    StpDocument doc = tokenize_stp(in);
    for (auto& [name, lines] : doc.sections) {
        if (name != "graph" && name != "terminals" && name != "comment")
            doc.warnings.push_back("ignoring SECTION '" + name + "'");
    }
    auto git = doc.sections.find("graph");
    if (git == doc.sections.end()) throw ParseError("missing SECTION Graph");
    auto tit = doc.sections.find("terminals");
    if (tit == doc.sections.end()) throw ParseError("missing SECTION Terminals");

    long nodes = -1, edge_count = -1;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;
    for (const auto& ln : git->second) {
        std::string head = lower(ln.tokens[0]);
        if (head == "nodes") {
            if (ln.tokens.size() != 2) fail(ln.number, "Nodes expects one argument");
            nodes = std::stol(ln.tokens[1]);
        } else if (head == "edges" || head == "arcs") {
            if (ln.tokens.size() != 2) fail(ln.number, "Edges expects one argument");
            edge_count = std::stol(ln.tokens[1]);
        } else if (head == "e") {
            if (ln.tokens.size() != 4) fail(ln.number, "E expects 'E u v cost'");
            if (nodes < 0) fail(ln.number, "E line before Nodes");
            long u, v;
            Rat c;
            try {
                u = std::stol(ln.tokens[1]);
                v = std::stol(ln.tokens[2]);
                c = rat_parse(ln.tokens[3]);
            } catch (const std::exception& ex) {
                fail(ln.number, std::string("bad E line: ") + ex.what());
            }
            if (u < 1 || u > nodes || v < 1 || v > nodes)
                fail(ln.number, "edge endpoint out of range");
            if (u == v) fail(ln.number, "self-loop");
            if (c < 0) fail(ln.number, "negative edge cost");
            int a = static_cast<int>(u - 1), b = static_cast<int>(v - 1);
            std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            if (!seen.insert(key).second) fail(ln.number, "duplicate edge");
            edges.push_back({key.first, key.second, c});
        } else {
            fail(ln.number, "unknown Graph record '" + ln.tokens[0] + "'");
        }
    }
    if (nodes < 0) throw ParseError("Graph section missing Nodes");
    if (edge_count >= 0 && edge_count != static_cast<long>(edges.size()))
        throw ParseError("Graph section announces " + std::to_string(edge_count) +
                         " edges but lists " + std::to_string(edges.size()));

    Instance inst;
    inst.n = static_cast<int>(nodes);
    inst.terminal.assign(inst.n, 0);
    inst.edges = std::move(edges);

    long announced_terms = -1;
    int term_count = 0;
    for (const auto& ln : tit->second) {
        std::string head = lower(ln.tokens[0]);
        if (head == "terminals") {
            if (ln.tokens.size() != 2) fail(ln.number, "Terminals expects one argument");
            announced_terms = std::stol(ln.tokens[1]);
        } else if (head == "t") {
            if (ln.tokens.size() != 2) fail(ln.number, "T expects one id");
            long id;
            try {
                id = std::stol(ln.tokens[1]);
            } catch (const std::exception&) {
                fail(ln.number, "bad terminal id");
            }
            if (id < 1 || id > nodes) fail(ln.number, "terminal out of range");
            if (!inst.terminal[id - 1]) ++term_count;
            inst.terminal[id - 1] = 1;
        } else {
            fail(ln.number, "unknown Terminals record '" + ln.tokens[0] + "'");
        }
    }
    if (announced_terms >= 0 && announced_terms != term_count)
        throw ParseError("Terminals section announces " + std::to_string(announced_terms) +
                         " terminals but lists " + std::to_string(term_count));

    if (warnings) *warnings = doc.warnings;
    inst.validate();
    return inst;
}

Instance parse_stp(const std::string& text, std::vector<std::string>* warnings) {
    std::istringstream in(text);
    return parse_stp(in, warnings);
}

void write_stp(const Instance& inst, std::ostream& out, const std::string& name) {
    out << "33D32945 STP File, STP Format Version 1.0\n";
    out << "SECTION Comment\n";
    out << "Name \"" << name << "\"\n";
    out << "END\n\n";
    out << "SECTION Graph\n";
    out << "Nodes " << inst.n << "\n";
    out << "Edges " << inst.edges.size() << "\n";
    std::vector<std::tuple<int, int, Rat>> es;
    for (const Edge& e : inst.edges) {
        auto [a, b] = std::minmax(e.u, e.v);
        es.emplace_back(a, b, e.cost);
    }
    std::sort(es.begin(), es.end(), [](const auto& x, const auto& y) {
        return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
    for (auto& [a, b, c] : es) {
        out << "E " << a + 1 << " " << b + 1 << " ";
        if (denominator(c) == 1)
            out << numerator(c).str();
        else
            out << rat_str(c);
        out << "\n";
    }
    out << "END\n\n";
    out << "SECTION Terminals\n";
    out << "Terminals " << inst.num_terminals() << "\n";
    for (int v = 0; v < inst.n; ++v)
        if (inst.terminal[v]) out << "T " << v + 1 << "\n";
    out << "END\n\nEOF\n";
}

std::string write_stp(const Instance& inst, const std::string& name) {
    std::ostringstream os;
    write_stp(inst, os, name);
    return os.str();
}

}  // namespace steiner

#include "causal_ssd/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "causal_ssd/errors.hpp"

namespace causal_ssd {

PartiallyDirectedGraph parse_edge_list(std::string_view text) {
    struct Item {
        std::string a, op, b;
        std::size_t line;
    };
    std::vector<Item> items;
    std::set<std::string> labels;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream tokens(raw);
        std::vector<std::string> parts;
        for (std::string t; tokens >> t;) parts.push_back(t);
        if (parts.empty()) continue;
        if (parts.size() == 1) {
            labels.insert(parts[0]);
            continue;
        }
        if (parts.size() != 3 || (parts[1] != "--" && parts[1] != "->"))
            throw ParseError("expected 'u -- v', 'u -> v' or a single label", line_no);
        if (parts[0] == parts[2]) throw ParseError("self-loop on '" + parts[0] + "'", line_no);
        labels.insert(parts[0]);
        labels.insert(parts[2]);
        items.push_back({parts[0], parts[1], parts[2], line_no});
    }

    PartiallyDirectedGraph g(std::vector<std::string>(labels.begin(), labels.end()));
    for (const auto& item : items) {
        try {
            const NodeId a = g.index(item.a), b = g.index(item.b);
            if (item.op == "--")
                g.add_undirected(a, b);
            else
                g.add_directed(a, b);
        } catch (const GraphError& e) {
            throw ParseError(e.what(), item.line);
        }
    }
    return g;
}

PartiallyDirectedGraph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

std::string format_edge_list(const PartiallyDirectedGraph& g) {
    std::ostringstream out;
    std::vector<char> touched(g.size(), 0);
    for (const auto& [a, b] : g.undirected_edges()) {
        out << g.label(a) << " -- " << g.label(b) << '\n';
        touched[a] = touched[b] = 1;
    }
    for (const auto& [a, b] : g.directed_edges()) {
        out << g.label(a) << " -> " << g.label(b) << '\n';
        touched[a] = touched[b] = 1;
    }
    for (NodeId v = 0; v < g.size(); ++v)
        if (!touched[v]) out << g.label(v) << '\n';
    return out.str();
}

} // namespace causal_ssd

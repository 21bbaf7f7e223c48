#pragma once

#include "steiner/graph.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace steiner {

/// Raw section view of an STP document: section name -> token records with
/// their line numbers. Produced by the tokenizer, consumed by the parser.
struct StpDocument {
    struct Line {
        int number;
        std::vector<std::string> tokens;
    };
    std::map<std::string, std::vector<Line>> sections;
    std::vector<std::string> warnings;  // ignored sections etc.
};

StpDocument tokenize_stp(std::istream& in);

/// Parses the SteinLib STP subset (Graph, Terminals, Comment sections;
/// anything else is skipped with a warning). 1-based ids map to dense
/// 0-based indices; costs are exact rationals (integer, decimal or "p/q").
/// Throws ParseError with a line number on malformed input.
Instance parse_stp(std::istream& in, std::vector<std::string>* warnings = nullptr);
Instance parse_stp(const std::string& text, std::vector<std::string>* warnings = nullptr);

void write_stp(const Instance& inst, std::ostream& out, const std::string& name = "instance");
std::string write_stp(const Instance& inst, const std::string& name = "instance");

}  // namespace steiner

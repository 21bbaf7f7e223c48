// Shared named instances used across the test suites.
#pragma once

#include "steiner/graph.hpp"

#include <string>

namespace fixtures {

using steiner::Instance;
using steiner::Rat;

// two terminals, one edge of cost 5
inline Instance path2() {
    Instance g;
    g.n = 2;
    g.terminal = {1, 1};
    g.edges = {{0, 1, Rat(5)}};
    return g;
}

// Steiner center 0 joined to terminals 1,2,3 at cost 1; no terminal edges
inline Instance star3() {
    Instance g;
    g.n = 4;
    g.terminal = {0, 1, 1, 1};
    g.edges = {{0, 1, Rat(1)}, {0, 2, Rat(1)}, {0, 3, Rat(1)}};
    return g;
}

// terminals a=0, b=1, c=2 with ab=1, bc=2, ac=3
inline Instance triangle() {
    Instance g;
    g.n = 3;
    g.terminal = {1, 1, 1};
    g.edges = {{0, 1, Rat(1)}, {1, 2, Rat(2)}, {0, 2, Rat(3)}};
    return g;
}

// the 12-node tree with 9 terminals whose loss is 8: terminals t1..t8 are
// vertices 0..7, the ninth terminal is vertex 8, Steiner vertices are
// s1=9, s3=10, s4=11
inline Instance fig3() {
    Instance g;
    g.n = 12;
    g.terminal = {1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0};
    g.edges = {{0, 9, Rat(4)}, {1, 8, Rat(2)}, {2, 8, Rat(6)},  {3, 9, Rat(5)},
               {4, 10, Rat(3)}, {5, 10, Rat(8)}, {6, 11, Rat(5)}, {7, 11, Rat(3)},
               {5, 11, Rat(4)}, {9, 8, Rat(5)},  {9, 10, Rat(2)}};
    return g;
}

inline std::string fig3_stp() {
    return "SECTION Graph\n"
           "Nodes 12\n"
           "Edges 11\n"
           "E 1 10 4\n"
           "E 2 9 2\n"
           "E 3 9 6\n"
           "E 4 10 5\n"
           "E 5 11 3\n"
           "E 6 11 8\n"
           "E 7 12 5\n"
           "E 8 12 3\n"
           "E 6 12 4\n"
           "E 10 9 5\n"
           "E 10 11 2\n"
           "END\n"
           "SECTION Terminals\n"
           "Terminals 9\n"
           "T 1\nT 2\nT 3\nT 4\nT 5\nT 6\nT 7\nT 8\nT 9\n"
           "END\n"
           "EOF\n";
}

}  // namespace fixtures

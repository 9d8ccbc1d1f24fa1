#include "crn/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace crn::fixtures {

const std::vector<NetworkFixture>& network_fixtures() {
    static const std::vector<NetworkFixture> all = {
        {"triangle", "2A1 <-> A1+A2 <-> 2A2 <-> 2A1",
         "2A1 <-> A1+A2\n"
         "A1+A2 <-> 2A2\n"
         "2A2 <-> 2A1\n"},
        {"cf-irreversible", "irreversible three-reaction network A+B->P, B+C->Q, C->2A",
         "A+B -> P\n"
         "B+C -> Q\n"
         "C -> 2A\n"},
        {"cf-reversible", "reversible version of cf-irreversible",
         "A+B <-> P\n"
         "B+C <-> Q\n"
         "C <-> 2A\n"},
        {"table1-i", "A+B<->P, B+C<->Q, C<->2A",
         "A+B <-> P\n"
         "B+C <-> Q\n"
         "C <-> 2A\n"},
        {"table1-ii", "A+B<->P, B+C<->Q, C+D<->R, D<->2A",
         "A+B <-> P\n"
         "B+C <-> Q\n"
         "C+D <-> R\n"
         "D <-> 2A\n"},
        {"table1-iii", "A+B<->P, B+C<->Q, C+D<->R, D+E<->S, E<->2A",
         "A+B <-> P\n"
         "B+C <-> Q\n"
         "C+D <-> R\n"
         "D+E <-> S\n"
         "E <-> 2A\n"},
        {"table1-iv", "A+B<->P, B+C<->Q, C<->A",
         "A+B <-> P\n"
         "B+C <-> Q\n"
         "C <-> A\n"},
        {"table1-v", "A+B<->F, A+C<->G, C+D<->B, C+E<->D",
         "A+B <-> F\n"
         "A+C <-> G\n"
         "C+D <-> B\n"
         "C+E <-> D\n"},
        {"table1-vi", "A+B<->2A", "A+B <-> 2A\n"},
        {"table1-vii", "2A+B<->3A", "2A+B <-> 3A\n"},
        {"table1-viii", "A+2B<->3A", "A+2B <-> 3A\n"},
        {"enzyme-inhibition", "S+E<->ES->E+P, I+E<->EI, I+ES<->ESI<->EI+S",
         "S+E <-> ES\n"
         "ES -> E+P\n"
         "I+E <-> EI\n"
         "I+ES <-> ESI\n"
         "ESI <-> EI+S\n"},
        {"two-substrate", "S1+E<->ES1, S2+E<->ES2, S2+ES1<->ES1S2<->S1+ES2, ES1S2->E+P",
         "S1+E <-> ES1\n"
         "S2+E <-> ES2\n"
         "S2+ES1 <-> ES1S2\n"
         "ES1S2 <-> S1+ES2\n"
         "ES1S2 -> E+P\n"},
    };
    return all;
}

const NetworkFixture& network_fixture(std::string_view name) {
    const auto& all = network_fixtures();
    auto it = std::find_if(all.begin(), all.end(), [&](const NetworkFixture& f) { return f.name == name; });
    if (it != all.end()) return *it;
    std::string known;
    for (const auto& f : all) known += (known.empty() ? "" : ", ") + f.name;
    throw std::out_of_range("unknown fixture '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<std::string> table1_names() {
    return {"table1-i", "table1-ii", "table1-iii", "table1-iv",
            "table1-v", "table1-vi", "table1-vii", "table1-viii"};
}

} // namespace crn::fixtures

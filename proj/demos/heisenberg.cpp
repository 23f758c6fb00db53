// The Heisenberg group 1 + UL_3(F_q): its character table, and each
// irreducible written as a character induced from a linear one.

#include <cstdlib>
#include <iostream>

#include "nilchar/nilchar.hpp"

using namespace nilchar;

int main(int argc, char** argv)
{
    const unsigned q = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 3;
    try {
        const auto g = make_unit_group(ul(3, q));
        GutkinEngine engine(g);
        const auto& t = *engine.top().table;
        std::cout << "|G| = " << g->order() << ", " << t.classes->count() << " classes\n\n" << t.to_csv() << '\n';

        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto d = engine.decompose(t[i]);
            std::cout << "chi" << i << ": degree " << d.degree << " = " << q << "^(3 - " << d.b().dim() << ")";
            if (!d.steps.empty())
                std::cout << ", B spanned by " << subspace_to_json(d.b()).dump();
            std::cout << (d.verified() ? "  ok" : "  FAILED") << '\n';
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}

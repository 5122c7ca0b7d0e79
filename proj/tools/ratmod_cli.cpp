#include <iostream>

#include "ratmod/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "help") {
        std::cout << "usage: ratmod <verb> [flags]\n"
                     "  invariants   --degree 2|3 --map FILE\n"
                     "  classify     --map FILE | --point FILE\n"
                     "  validate     --degree 2|3 --point FILE\n"
                     "  equivalent   --degree 2|3 A.json B.json\n"
                     "  descend      --degree 3 --point FILE [--height-bound N]\n"
                     "  reconstruct2 --point FILE\n"
                     "  selftest\n"
                     "Flags: --human adds a summary field. RATMOD_HEIGHT_BOUND sets the\n"
                     "default conic search bound.\n";
        return args.empty() ? 2 : 0;
    }
    ratmod::CommandResult r = ratmod::run_command(args);
    std::cout << r.output.dump(2) << "\n";
    return r.exit_code;
}

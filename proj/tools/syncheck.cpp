// droidmut-syncheck: lightweight build check for mutant clones on machines
// without an Android toolchain. Parses every Java source and resource XML in
// the tree and fails (exit 1) on the first syntactic problem, printing a
// compiler-style message. Used as a compile hook:
//
//   droidmut-syncheck {mutant_dir}

#include <iostream>
#include <string>

#include "droidmut/project_model.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: droidmut-syncheck <project_dir>\n";
        return 64;
    }
    try {
        droidmut::DiagnosticList diagnostics;
        droidmut::SourceModel model = droidmut::scan_project(argv[1], {}, diagnostics);
        (void)model;
        if (!diagnostics.empty()) {
            for (const auto& d : diagnostics)
                std::cout << d.file << ":" << d.position << ": error: " << d.message << "\n";
            return 1;
        }
    } catch (const droidmut::Error& e) {
        std::cout << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

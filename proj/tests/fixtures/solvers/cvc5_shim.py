#!/usr/bin/env python3
# Stdin SMT-LIB front end for the cvc5 Python package, which ships no binary.
import sys

import cvc5


def main():
    text = sys.stdin.read()
    tm = cvc5.TermManager()
    solver = cvc5.Solver(tm)
    solver.setOption("produce-models", "true")
    symbols = cvc5.SymbolManager(tm)
    parser = cvc5.InputParser(solver, symbols)
    parser.setStringInput(cvc5.InputLanguage.SMT_LIB_2_6, text, "stdin")
    out = []
    while True:
        cmd = parser.nextCommand()
        if cmd.isNull():
            break
        result = cmd.invoke(solver, symbols)
        if result:
            out.append(result if result.endswith("\n") else result + "\n")
    sys.stdout.write("".join(out))


if __name__ == "__main__":
    main()

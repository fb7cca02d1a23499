#!/usr/bin/env python3
"""
End-to-end smoke test
Runs the CLI as a subprocess on the builtins and sample files and checks exit codes and key dimensions
"""

import json
import subprocess
import sys
from typing import List, Optional


def run_cli(args: List[str]) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "cli.main"] + args,
        capture_output=True, text=True, timeout=600,
    )


def check_report(title: str, args: List[str], expected_code: int, dimensions: Optional[dict] = None) -> bool:
    """Run one command, compare the exit code and, for JSON output, the reported dimensions"""
    try:
        result = run_cli(args)
        if result.returncode != expected_code:
            print(f"❌ {title}: exit {result.returncode}, expected {expected_code}")
            if result.stderr:
                print(f"   {result.stderr.strip().splitlines()[-1]}")
            return False
        if dimensions:
            report = json.loads(result.stdout)
            for key, value in dimensions.items():
                if report["dimensions"].get(key) != value:
                    print(f"❌ {title}: dim {key} = {report['dimensions'].get(key)}, expected {value}")
                    return False
        print(f"✅ {title}")
        return True
    except Exception as e:
        print(f"❌ {title} error: {e}")
        return False


def check_deterministic(args: List[str]) -> bool:
    """Two runs on the same input must print byte-identical JSON"""
    first, second = run_cli(args), run_cli(args)
    if first.stdout == second.stdout and first.returncode == second.returncode:
        print("✅ JSON output is deterministic")
        return True
    print("❌ JSON output differs between runs")
    return False


def main():
    """Main test function"""
    print("🧪 Hopf engine - CLI smoke tests")
    print("=" * 50)

    checks = [
        ("H4 axioms from file", ["verify", "--file", "samples/sweedler_h4.json"], 0, None),
        ("k[Z2] over F3", ["verify", "--file", "samples/z2_group_algebra.json"], 0, None),
        ("broken antipode rejected", ["verify", "--file", "samples/z3_bad_antipode.json"], 1, None),
        ("malformed file rejected", ["verify", "--file", "samples/malformed.json"], 2, None),
        ("HZ(k[Q8])", ["hopf-center", "--builtin", "group-algebra:Q8", "--format", "json"], 0, {"HZ": 2}),
        ("HZ(k[S3])", ["hopf-center", "--builtin", "group-algebra:S3", "--format", "json"], 0, {"HZ": 1}),
        ("HC(H4)", ["cocenter", "--builtin", "sweedler", "--format", "json"], 0, {"HC": 1}),
        ("HC(k(D4))", ["cocenter", "--builtin", "function-algebra:D4", "--format", "json"], 0, {"HC": 2}),
        ("central sequence of k[Q8]",
         ["sequence", "--kind", "central", "--builtin", "group-algebra:Q8", "--format", "json"], 0,
         {"C": 2, "A": 8, "B": 4}),
        ("cocentral sequence of k(Q8)",
         ["sequence", "--kind", "cocentral", "--builtin", "function-algebra:Q8", "--format", "json"], 0,
         {"C": 4, "A": 8, "B": 2}),
        ("H4 is self-dual", ["dual", "--builtin", "sweedler", "--self-dual"], 0, None),
        ("twist of H4", ["twist", "--builtin", "sweedler", "--element", "1=1,x=1"], 0, None),
    ]
    passed = sum(check_report(*check) for check in checks)

    print("\n🔄 Checking determinism...")
    passed += check_deterministic(["cocenter", "--builtin", "function-algebra:S3", "--format", "json"])

    if "--slow" in sys.argv:
        print("\n⏳ Small quantum sl2 at p=3 (slow)...")
        passed += check_report("cocenter of u_q(sl2)",
                               ["cocenter", "--builtin", "small-quantum-sl2:p=3", "--format", "json"], 0, {"HC": 1})

    print(f"\n🎉 Smoke tests completed: {passed} passed")


if __name__ == "__main__":
    main()

"""End-to-end checks of the knotss command line: exit codes, schema, determinism, config sources."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BINARY = os.environ.get("KNOTSS_BIN", "build/tools/knotss")
SCHEMA = os.environ.get("KNOTSS_SCHEMA", "data/cli_schema.json")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("KNOTSS_SEED", None)
    if env:
        full_env.update(env)
    p = subprocess.run([BINARY, *args], capture_output=True, text=True, env=full_env, timeout=600)
    return p.returncode, p.stdout, p.stderr


class CliTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        with open(SCHEMA) as f:
            cls.schema = json.load(f)

    def doc(self, *args, code=0, env=None):
        rc, out, err = run(*args, env=env)
        self.assertEqual(rc, code, err)
        d = json.loads(out)
        jsonschema.validate(d, self.schema)
        return d

    def test_conf_dims(self):
        d = self.doc("conf-dims", "--max-arity", "4")
        rows = {r["p"]: r["dims"] for r in d["result"]["rows"]}
        self.assertEqual(rows[4], [1, 6, 11, 6])
        self.assertEqual(rows[2], [1, 1])
        self.assertEqual(d["config"]["max_arity"], 4)
        for field in ("f2", "f3", "q"):
            self.assertTrue(self.doc("conf-dims", "--field", field)["pass"])

    def test_rejections(self):
        self.assertEqual(run("conf-dims", "--field", "f7")[0], 2)
        self.assertEqual(run("conf-dims", "--max-arity", "9")[0], 2)
        self.assertEqual(run("conf-dims", "--no-such-flag")[0], 2)
        self.assertEqual(run()[0], 2)
        self.assertEqual(run("verify-cycle", "--class", "g1*", "--arity", "4")[0], 2)
        self.assertEqual(run("verify-cycle", "--arity", "4")[0], 2)
        self.assertEqual(run("ledger", "--case", "nope")[0], 2)
        self.assertEqual(run("geom", "--lemma", "nope")[0], 2)
        self.assertEqual(run("--help")[0], 0)

    def test_ss_table(self):
        d = self.doc("ss-table", "--field", "f3")
        page2 = next(p for p in d["result"]["pages"] if p["r"] == 2)
        dims = {(s["p"], s["q"]): s for s in page2["slots"]}
        self.assertEqual(dims[(-4, 2)]["dim"], 1)
        self.assertEqual(dims[(-2, 1)]["dim"], 1)
        for f in ("f2", "q"):
            page2 = next(p for p in self.doc("ss-table", "--field", f)["result"]["pages"] if p["r"] == 2)
            self.assertEqual({(s["p"], s["q"]): s["dim"] for s in page2["slots"]}[(-2, 1)], 1)
        for page in d["result"]["pages"]:
            if page["r"] >= 2:
                for s in page["slots"]:
                    if s["p"] > -5:
                        self.assertEqual(s["d_rank"], 0)
        self.assertTrue(d["result"]["higher_differentials_vanish"])

    def test_tsv(self):
        rc, out, _ = run("--format", "tsv", "conf-dims", "--max-arity", "2")
        self.assertEqual(rc, 0)
        self.assertEqual(out.splitlines(), ["p\tq\tdim", "1\t0\t1", "2\t0\t1", "2\t1\t1"])

    def test_verify_cycle(self):
        char2 = "g14*g23+g13*g24+g12*g34"
        self.assertTrue(self.doc("verify-cycle", "--class", char2, "--arity", "4", "--field", "f2")["result"]["is_d1_cycle"])
        self.assertFalse(self.doc("verify-cycle", "--class", char2, "--arity", "4", "--field", "q")["result"]["is_d1_cycle"])
        char3 = "-g(1,3)*g(2,3)*g(4,5)+g(1,4)*g(2,4)*g(3,5)+g(1,4)*g(2,5)*g(3,4)+g(1,5)*g(2,4)*g(3,4)"
        r = self.doc("verify-cycle", "--class", char3, "--arity", "5", "--field", "f3")["result"]
        self.assertTrue(r["is_d1_cycle"])
        self.assertFalse(r["is_d1_boundary"])
        self.assertFalse(self.doc("verify-cycle", "--class", char3, "--arity", "5", "--field", "q")["result"]["is_d1_cycle"])

    def test_passthroughs(self):
        d = self.doc("ledger", "--case", "ch2-bounding", "--samples", "10")
        self.assertTrue(d["pass"])
        self.assertEqual(d["result"]["cases"][0]["case"], "ch2-bounding")
        self.assertTrue(self.doc("ainf-check", "--max-arity", "6")["pass"])
        self.assertTrue(self.doc("triple-commute", "--n", "4")["pass"])
        self.assertTrue(self.doc("triple-commute", "--n", "5", "--discrete-only")["pass"])
        g = self.doc("geom", "--lemma", "collapse", "--samples", "50")
        self.assertEqual(g["result"]["reports"][0]["lemma"], "collapse")
        # the lemma as stated has counterexamples, so the run reports failure
        bad = self.doc("geom", "--lemma", "diagonal-incl", "--samples", "1000", code=1)
        self.assertGreater(bad["result"]["reports"][0]["counterexample_count"], 0)

    def test_determinism_and_seed_sources(self):
        a = run("geom", "--lemma", "collapse", "--samples", "40", "--seed", "5")[1]
        b = run("geom", "--lemma", "collapse", "--samples", "40", "--seed", "5")[1]
        self.assertEqual(a, b)
        c = run("geom", "--lemma", "collapse", "--samples", "40", env={"KNOTSS_SEED": "5"})[1]
        self.assertEqual(a, c)
        d = json.loads(run("geom", "--lemma", "collapse", "--samples", "40", env={"KNOTSS_SEED": "6"})[1])
        self.assertEqual(d["config"]["seed"], 6)
        e = json.loads(run("geom", "--lemma", "collapse", "--samples", "40", "--seed", "7",
                           env={"KNOTSS_SEED": "6"})[1])
        self.assertEqual(e["config"]["seed"], 7)
        self.assertEqual(run("geom", "--lemma", "collapse", env={"KNOTSS_SEED": "x"})[0], 2)

    def test_config_file_and_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            cfg = os.path.join(tmp, "run.cfg")
            out = os.path.join(tmp, "out.json")
            with open(cfg, "w") as f:
                f.write("field=f3\nmax-arity=3\n")
            rc, stdout, err = run("--config", cfg, "conf-dims", "--output", out)
            self.assertEqual(rc, 0, err)
            self.assertEqual(stdout, "")
            with open(out) as f:
                d = json.load(f)
            jsonschema.validate(d, self.schema)
            self.assertEqual(d["config"]["field"], "f3")
            self.assertEqual(d["config"]["max_arity"], 3)
            # flags on the command line win over the file
            d = json.loads(run("--config", cfg, "conf-dims", "--max-arity", "2")[1])
            self.assertEqual(d["config"]["max_arity"], 2)


if __name__ == "__main__":
    if len(sys.argv) > 2:
        BINARY, SCHEMA = sys.argv[1], sys.argv[2]
        del sys.argv[1:3]
    unittest.main()

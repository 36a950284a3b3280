"""
Tests for file formats handled by the DataManager.
"""

import json
import sys
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import pandas as pd

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from ipr.classes import collect_certificates, detect_segmentation, verify_certificate
from ipr.constructors import block_diag, schur
from ipr.data_manager import DataManager, MalformedInputError, parse_row
from ipr.matrixcore import FinMatrix, SparseRow, materialize
from ipr.search import recheck, verify_at_scale
from ipr.sweep import SweepConfig, sweep_universe


class TestDataManager(unittest.TestCase):
    """Reading and writing every format"""

    def setUp(self):
        """Set up test fixtures"""
        self.data = DataManager()
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, payload) -> Path:
        path = self.dir / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload),
                        encoding='utf-8')
        return path

    def test_matrix_format(self):
        A = FinMatrix.from_dense([[1, "-1/2"], [0, 3]])
        doc = self.data.matrix_to_dict(A)
        self.assertEqual(doc, {"nrows": 2, "ncols": 2,
                               "rows": [[[0, "1"], [1, "-1/2"]], [[1, "3"]]]})
        path = self.data.save_matrix(A, self.dir / "out" / "a.json")
        self.assertEqual(self.data.load_matrix(path), A)

    def test_integer_values_accepted(self):
        path = self.write("a.json", {"nrows": 1, "ncols": 2, "rows": [[[0, 1], [1, "2/4"]]]})
        self.assertEqual(self.data.load_matrix(path).entry(0, 1), Fraction(1, 2))

    def test_malformed_matrices(self):
        bad = [
            {"nrows": 1, "ncols": 1, "rows": [[[0, 0.5]]]},
            {"nrows": 1, "ncols": 1, "rows": [[[0, True]]]},
            {"nrows": 2, "ncols": 1, "rows": [[[0, 1]]]},
            {"nrows": 1, "ncols": 1, "rows": [[[3, 1]]]},
            {"nrows": 1, "ncols": 2, "rows": [[[0, 1], [0, 2]]]},
            {"nrows": 1, "ncols": 1, "rows": [[[0, "1/0"]]]},
            {"nrows": 1, "ncols": 1, "rows": [[[0, "x"]]], "extra": 1},
        ]
        for i, doc in enumerate(bad):
            path = self.write(f"bad{i}.json", doc)
            with self.assertRaises(MalformedInputError, msg=doc):
                self.data.load_matrix(path)

    def test_not_json(self):
        path = self.write("broken.json", "{nrows: 1")
        with self.assertRaises(MalformedInputError):
            self.data.load_matrix(path)

    def test_coloring_format(self):
        path = self.write("c.json", {"n": 3, "r": 2, "colors": [0, 1, 2]})
        with self.assertRaises(MalformedInputError):
            self.data.load_coloring(path)

    def test_verdict_round_trip_rechecks(self):
        verdict = verify_at_scale(schur(), 2, 4, 4)
        path = self.data.save_json(self.data.verdict_to_dict(verdict), self.dir / "v.json")
        loaded = self.data.load_verdict(path)
        self.assertEqual(loaded.kind, verdict.kind)
        self.assertEqual(loaded.coloring, verdict.coloring)
        self.assertTrue(recheck(loaded, schur()))

    def test_samples_jsonl(self):
        verdict = verify_at_scale(schur(), 2, 5, 5, samples=4)
        path = self.data.save_samples(verdict, self.dir / "samples.jsonl")
        lines = Path(path).read_text(encoding='utf-8').splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(self.data.load_samples(path), verdict.witnesses)

    def test_certificates(self):
        A = block_diag([schur(), schur()])
        cert = detect_segmentation(A)
        path = self.data.save_certificates([cert], self.dir / "certs.json")
        doc = json.loads(Path(path).read_text(encoding='utf-8'))[0]
        self.assertEqual(doc["kind"], "segmentation")
        self.assertTrue(verify_certificate(A, self.data.certificate_from_dict(doc)))

    def test_triangular_certificate_needs_parameters(self):
        with self.assertRaises(MalformedInputError):
            self.data.certificate_from_dict({"kind": "restricted_triangular", "d": 1})

    def test_certificate_list_file(self):
        A = block_diag([schur(), schur()])
        certs = collect_certificates(A)
        path = self.data.save_certificates(certs, self.dir / "all.json")
        loaded = self.data.load_certificates(path)
        self.assertEqual(loaded, certs)
        self.assertTrue(all(verify_certificate(A, cert) for cert in loaded))

        single = self.write("one.json", {"kind": "first_entries", "t": {"0": 1}})
        self.assertEqual(len(self.data.load_certificates(single)), 1)

        with self.assertRaises(MalformedInputError):
            self.data.load_certificates(self.write("empty.json", []))
        with self.assertRaises(MalformedInputError) as caught:
            self.data.load_certificates(self.write("mixed.json", [
                {"kind": "first_entries", "t": {"0": "1"}},
                {"kind": "isolated_pivot", "d": "1", "j": [0]},
            ]))
        self.assertIn("[1]", str(caught.exception))

    def test_family_spec_rows(self):
        path = self.write("f.json", {"family": "rows", "rows": [[[0, 1], [1, "1/2"]], [[1, 2]]]})
        A = materialize(self.data.load_family_spec(path), 2)
        self.assertEqual(A.to_dense(), [[1, Fraction(1, 2)], [0, 2]])

    def test_family_spec_unknown(self):
        path = self.write("f.json", {"family": "nope"})
        with self.assertRaises(ValueError):
            self.data.load_family_spec(path)

    def test_target_set_and_sequences(self):
        self.assertEqual(self.data.load_target_set(self.write("s.json", [1, 2])), [1, 2])
        self.assertEqual(self.data.load_target_set(self.write("t.json", {"set": [3]})), [3])
        self.assertEqual(self.data.load_sequences(self.write("q.json", {"seqs": [[1, 2]]})),
                         [[1, 2]])
        with self.assertRaises(MalformedInputError):
            self.data.load_sequences(self.write("r.json", {"seqs": [[1.5]]}))

    def test_parse_row(self):
        self.assertEqual(parse_row("1,0,-1/2"), SparseRow.from_dense([1, 0, Fraction(-1, 2)]))
        self.assertEqual(parse_row("0:1, 3:2"), SparseRow.from_pairs([(0, 1), (3, 2)]))
        with self.assertRaises(ValueError):
            parse_row("1,2:3")
        with self.assertRaises(ValueError):
            parse_row("")

    def test_export_sweep_csv(self):
        table = sweep_universe(schur(), SweepConfig(colors=2, n_from=4, n_to=5))
        path = self.data.export_to_csv(table, self.dir / "sweep.csv")
        loaded = pd.read_csv(path)
        self.assertEqual(list(loaded['kind']), ['EscapingColoring', 'ForcedAtScale'])
        with self.assertRaises(ValueError):
            self.data.export_to_csv(table.iloc[0:0], self.dir / "empty.csv")


if __name__ == '__main__':
    unittest.main()

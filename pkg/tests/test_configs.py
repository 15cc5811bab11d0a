import os
import tempfile
import unittest

from qlattice.configs import ConfigFile, guess_config_format, split_name


YAML_SAMPLE = """Caps:
  NODE_CAP: 1000  # Search nodes per root subtree
  WITNESS_CAP: 10
General:
  SEED: 7
"""

TOML_SAMPLE = """[Caps]
NODE_CAP = 1000 # Search nodes per root subtree
WITNESS_CAP = 10

[General]
SEED = 7
"""

INI_SAMPLE = """[Caps]
NODE_CAP = 1000
WITNESS_CAP = 10
[General]
SEED = 7
"""

JSON_SAMPLE = """{
    "Caps": {
        "NODE_CAP": 1000,
        "WITNESS_CAP": 10
    },
    "General": {
        "SEED": 7
    }
}"""


class TestHelpers(unittest.TestCase):
    def test_split_name(self):
        self.assertEqual(split_name('Caps/NODE_CAP'), ('Caps', 'NODE_CAP'))
        self.assertEqual(split_name('/Caps//NODE_CAP/'), ('Caps', 'NODE_CAP'))
        self.assertEqual(split_name(''), ())

    def test_guess_config_format(self):
        self.assertEqual(guess_config_format('run.yml'), 'yaml')
        self.assertEqual(guess_config_format('run.YAML'), 'yaml')
        self.assertEqual(guess_config_format('runs/emc.toml'), 'toml')
        self.assertEqual(guess_config_format('run.ini'), 'ini')
        self.assertEqual(guess_config_format('run.json'), 'json')


class TestConfigFile(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()

    def write(self, name, content):
        fp = os.path.join(self.tmpdir.name, name)
        with open(fp, 'w') as f:
            f.write(content)

        return fp

    def test_unknown_format_raises(self):
        with self.assertRaises(ValueError):
            ConfigFile(os.path.join(self.tmpdir.name, 'run.xml'))

    def test_missing_file_gives_empty_config(self):
        cfg = ConfigFile(os.path.join(self.tmpdir.name, 'missing.yaml'))

        self.assertEqual(len(cfg), 0)

    def test_all_formats_load_the_same_data(self):
        for name, content in [
                ('run.yaml', YAML_SAMPLE),
                ('run.toml', TOML_SAMPLE),
                ('run.json', JSON_SAMPLE),
            ]:
            cfg = ConfigFile(self.write(name, content))

            self.assertEqual(cfg.to_dict(), {
                'Caps': {'NODE_CAP': 1000, 'WITNESS_CAP': 10},
                'General': {'SEED': 7},
            }, name)

    def test_ini_values_are_strings(self):
        cfg = ConfigFile(self.write('run.ini', INI_SAMPLE))

        self.assertEqual(cfg.retrieve('Caps/NODE_CAP'), '1000')
        self.assertEqual(cfg.retrieve('General/SEED'), '7')

    def test_storing_nested_value_results_in_intermediate_keys(self):
        cfg = ConfigFile(os.path.join(self.tmpdir.name, 'new.json'))
        cfg.store('This/is/it', 'Hello, world!')

        self.assertIn('This', cfg)
        self.assertEqual(cfg.retrieve('This/is/it'), 'Hello, world!')

    def test_storedefault_does_not_overwrite_existing_values(self):
        cfg = ConfigFile(self.write('run.yaml', YAML_SAMPLE))
        cfg.storedefault('Caps/NODE_CAP', 42)
        cfg.storedefault('Caps/ENUMERATION_CAP', 43)

        self.assertEqual(cfg.retrieve('Caps/NODE_CAP'), 1000)
        self.assertEqual(cfg.retrieve('Caps/ENUMERATION_CAP'), 43)

    def test_yaml_round_trip_keeps_comments(self):
        fp = self.write('run.yaml', YAML_SAMPLE)
        cfg = ConfigFile(fp)
        cfg.save()
        with open(fp) as f:
            self.assertEqual(f.read(), YAML_SAMPLE)

    def test_toml_round_trip_keeps_comments(self):
        fp = self.write('run.toml', TOML_SAMPLE)
        cfg = ConfigFile(fp)
        cfg.save()
        with open(fp) as f:
            self.assertEqual(f.read(), TOML_SAMPLE)

    def test_saved_values_survive_reload(self):
        fp = os.path.join(self.tmpdir.name, 'run.json')
        cfg = ConfigFile(fp)
        cfg.store('Caps/NODE_CAP', 5)
        cfg.save()

        self.assertEqual(ConfigFile(fp).retrieve('Caps/NODE_CAP'), 5)


if __name__ == '__main__':
    unittest.main()

# -*- coding: utf-8 -*-
#
# randexp: thermodynamic formalism for random exponential maps
#
# Copyright © 2026 The randexp developers
#
# randexp is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# randexp is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with randexp.  If not, see <https://www.gnu.org/licenses/>.

import os
import json
import pytest

from randexp.main import main
from randexp.pressure import PressureEstimate
from randexp.measure import measure_from_csv

SMALL = ('--n', '4', '--burn', '1', '--atoms', '5', '--atom-cap', '50')


def run(capsys, *args):
    with pytest.raises(SystemExit) as exc:
        main(args)

    out, err = capsys.readouterr()

    return exc.value.code, out, err

def read(path, mode='r'):
    with open(path, mode) as f:
        return f.read()

def test_version(capsys):
    ret, out, _ = run(capsys, '--version')

    assert ret == 0
    assert out.startswith('randexp ')

def test_no_command(capsys):
    ret, _, _ = run(capsys)

    assert ret == 2

def test_missing_required_setting(capsys, tmpdir):
    ret, _, err = run(capsys, '--output-dir', str(tmpdir), 'pressure', '--B', '2')

    assert ret == 1
    assert 'A' in err
    assert 'configuration error' in err

def test_invalid_driver(capsys, tmpdir):
    ret, _, err = run(capsys, '--output-dir', str(tmpdir), 'scan',
        '--driver', 'brownian', '--A', '1', '--B', '2')

    assert ret == 1
    assert 'brownian' in err

def test_missing_output_dir(capsys, tmpdir):
    ret, _, err = run(capsys, '--output-dir', str(tmpdir.join('missing')),
        'scan', '--A', '1', '--B', '1')

    assert ret == 1
    assert 'missing' in err

def test_pressure_range(capsys, tmpdir):
    ret, out, _ = run(capsys, '--output-dir', str(tmpdir), 'pressure',
        '--A', '1', '--B', '1', '--t', '1.2:2.0:0.1', *SMALL)

    assert ret == 0
    assert 'pressure' in out

    lines = read(str(tmpdir.join('pressure.csv'))).splitlines()

    assert lines[0] == 't,value,stderr,n'
    assert len(lines) == 1 + 9
    assert lines[1].startswith('1.2,')
    assert lines[-1].startswith('2.0,')

    metadata = json.loads(read(str(tmpdir.join('pressure.json'))))

    assert metadata['schema'] == 1
    assert metadata['command'] == 'pressure'
    assert metadata['config']['A'] == 1.0
    assert metadata['numerics']['atom_cap'] == 50
    assert len(metadata['result']['estimates']) == 9
    assert 'numpy' in metadata['versions']

def test_output_is_reproducible(capsys, tmpdir):
    outputs = []

    for name in ('a', 'b'):
        directory = tmpdir.mkdir(name)
        ret, _, _ = run(capsys, '--output-dir', str(directory), 'pressure',
            '--driver', 'iid_uniform', '--A', '1', '--B', '2', '--seed', '11',
            '--t', '1.5:1.6:0.1', *SMALL)

        assert ret == 0
        outputs.append([
            read(str(directory.join(x)), 'rb') for x in ('pressure.csv', 'pressure.json')
        ])

    assert outputs[0] == outputs[1]

def test_config_file(capsys, tmpdir):
    path = tmpdir.join('run.conf')
    path.write("A = 1.0\nB = 1.5\ndriver = iid_uniform\nresolution = 5\n")

    ret, out, _ = run(capsys, '--config', str(path), '--output-dir', str(tmpdir),
        'scan', '--n', '8')

    assert ret == 0
    assert 'fraction_satisfying' in out

    lines = read(str(tmpdir.join('scan.csv'))).splitlines()

    assert lines[0] == 're,im,satisfied,witness'
    assert len(lines) == 1 + 25

    metadata = json.loads(read(str(tmpdir.join('scan.json'))))

    assert 0 <= metadata['result']['fraction_satisfying'] <= 1
    assert metadata['config']['n'] == 8

def test_raster(capsys, tmpdir):
    ret, _, _ = run(capsys, '--output-dir', str(tmpdir), 'raster',
        '--A', '1', '--B', '1', '--width', '8', '--height', '4', '--n-max', '6')

    assert ret == 0

    data = read(str(tmpdir.join('raster.pgm')), 'rb')

    assert data.startswith(b'P5\n8 4\n255\n')
    assert len(data) == len(b'P5\n8 4\n255\n') + 32

    metadata = json.loads(read(str(tmpdir.join('raster.json'))))

    assert sum(metadata['result']['index_counts']) == 32

def test_measure(capsys, tmpdir):
    ret, out, _ = run(capsys, '--output-dir', str(tmpdir), 'measure',
        '--A', '1', '--B', '1', '--n', '3', '--atoms', '10', '--atom-cap', '50',
        '--w-max', '2', '--balls', '4')

    assert ret == 0
    assert 'conformality residual' in out

    with open(str(tmpdir.join('measure.csv')), newline='') as f:
        measure = measure_from_csv(f)

    assert len(measure) > 0
    assert measure.total == pytest.approx(1)

    metadata = json.loads(read(str(tmpdir.join('measure.json'))))

    assert len(metadata['result']['lambdas']) == 3
    assert metadata['result']['p_space']['constants']['K'] == 12
    assert metadata['result']['invariant']['fiber'] == 1
    assert metadata['result']['invariant']['invariance_residual'] >= 0
    assert metadata['result']['conformality_residual'] < 1e-9

def test_measure_from_input(capsys, tmpdir):
    path = tmpdir.join('seed.csv')
    path.write("re,im,weight\n0.5,1.0,0.5\n-0.5,2.0,0.5\n")

    ret, _, _ = run(capsys, '--output-dir', str(tmpdir), 'measure',
        '--A', '1', '--B', '1', '--n', '2', '--input', str(path), '--w-max', '1',
        '--balls', '2')

    assert ret == 0

def test_bowen(capsys, tmpdir, monkeypatch):
    def fake(tp, cfg, n, burn, atoms, seq):
        return PressureEstimate(tp.t, 1.5 - tp.t, 0.001, n, 'birkhoff_lambda')
    monkeypatch.setattr('randexp.pressure.pressure_birkhoff', fake)

    ret, out, _ = run(capsys, '--output-dir', str(tmpdir), 'bowen',
        '--A', '1', '--B', '2', '--tol', '0.01', '--n', '8')

    assert ret == 0

    metadata = json.loads(read(str(tmpdir.join('bowen.json'))))

    assert metadata['result']['h'] == pytest.approx(1.5, abs=0.01)

def test_bowen_inconclusive(capsys, tmpdir, monkeypatch):
    def fake(tp, cfg, n, burn, atoms, seq):
        return PressureEstimate(tp.t, 3.0 - tp.t, 0.001, n, 'birkhoff_lambda')
    monkeypatch.setattr('randexp.pressure.pressure_birkhoff', fake)

    ret, _, err = run(capsys, '--output-dir', str(tmpdir), 'bowen',
        '--A', '1', '--B', '2', '--n', '8')

    assert ret == 2
    assert 'inconclusive' in err
    assert not os.path.exists(str(tmpdir.join('bowen.json')))

def test_ctrl_c_handling(capsys, tmpdir, monkeypatch):
    def interrupt(*args, **kwargs):
        raise KeyboardInterrupt
    monkeypatch.setattr('randexp.commands.scan.typical_scan', interrupt)

    ret, _, _ = run(capsys, '--output-dir', str(tmpdir), 'scan', '--A', '1', '--B', '1')

    assert ret == 2

def test_unexpected_error(capsys, tmpdir, monkeypatch):
    def fail(*args, **kwargs):
        raise RuntimeError("boom")
    monkeypatch.setattr('randexp.commands.scan.typical_scan', fail)

    ret, _, err = run(capsys, '--output-dir', str(tmpdir), 'scan', '--A', '1', '--B', '1')

    assert ret == 3
    assert 'boom' in err

def test_profiling(capsys, tmpdir):
    ret, out, _ = run(capsys, '--profile', '-', '--output-dir', str(tmpdir),
        'scan', '--A', '1', '--B', '1', '--n', '4', '--resolution', '3')

    assert ret == 0
    assert 'Timings for' in out

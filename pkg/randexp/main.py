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
import sys
import logging
import argparse
import traceback

from . import VERSION
from .exc import ConfigError, DomainError, AccuracyError, InconclusiveError
from .config import RunConfig, KEYS
from .logging import setup_logging
from .progress import ProgressManager
from .profiling import ProfileManager, profile
from .commands import CommandManager
from .presenters.formats import output_all

logger = logging.getLogger(__name__)


try:
    import argcomplete
except ImportError:
    argcomplete = None


def create_parser():
    parser = argparse.ArgumentParser(
        prog='randexp',
        description='Thermodynamic formalism for random exponential maps',
        add_help=False)
    parser.add_argument('--debug', dest='debug', action='store_true',
                        default=False, help='Display debug messages')
    parser.add_argument('--verbose', '-v', dest='verbose', action='count',
                        default=0, help='Report progress of the numerics; '
                        'repeat for debug messages')
    parser.add_argument('--log-file', metavar='FILE', dest='log_file',
                        help='Write log messages to FILE instead of stderr')
    parser.add_argument('--config', metavar='FILE', dest='config',
                        help='Read settings from a "key = value" file; '
                        'flags override it')
    parser.add_argument('--output-dir', metavar='DIR', dest='output_dir',
                        default='.', help='Directory for CSV, JSON and PGM '
                        'output (default: %(default)s)')
    parser.add_argument('--status-fd', dest='status_fd', metavar='FD', type=int,
                        help='Send machine-readable status to file descriptor FD')
    parser.add_argument('--progress', dest='progress', action='store_const',
                        const=True, help='Show an approximate progress bar')
    parser.add_argument('--no-progress', dest='progress', action='store_const',
                        const=False, help='Do not show any progress bar')
    parser.add_argument('--profile', metavar='OUTPUT_FILE', dest='profile_output',
                        help='Write profiling info to given file (use - for stdout)')
    parser.add_argument('--help', '-h', action='help',
                        help="Show this help and exit")
    parser.add_argument('--version', action='version',
                        version='randexp %s' % VERSION,
                        help="Show program's version number and exit")

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    for klass in CommandManager().classes:
        sub = subparsers.add_parser(klass.name, help=klass.help,
            description=klass.help)
        group = sub.add_argument_group('settings')

        for key in klass.keys():
            group.add_argument(
                '--{}'.format(key.replace('_', '-')),
                dest=key,
                metavar=key.upper(),
                help=KEYS[key].help,
            )

    if argcomplete:
        argcomplete.autocomplete(parser)
    elif '_ARGCOMPLETE' in os.environ:
        logger.error('Argument completion requested but the "argcomplete" '
            'module is not installed.')
        sys.exit(1)

    return parser


def run_randexp(parsed_args):
    setup_logging(parsed_args.debug, parsed_args.verbose, parsed_args.log_file)
    ProfileManager().setup(parsed_args)
    logger.debug("Starting randexp %s", VERSION)

    klass = CommandManager().get(parsed_args.command)
    overrides = {k: getattr(parsed_args, k) for k in klass.keys()}

    run_config = RunConfig.resolve(parsed_args.config, overrides)
    run_config.apply()

    if not os.path.isdir(parsed_args.output_dir):
        raise ConfigError("Output directory {} does not exist".format(
            parsed_args.output_dir), 'output_dir')

    ProgressManager().setup(parsed_args)

    with profile('main', parsed_args.command):
        artifacts = klass(run_config).run()

    ProgressManager().finish()

    with profile('main', 'outputs'):
        output_all(artifacts, parsed_args)

    return 0


def main(args=None):
    if args is None:
        args = sys.argv[1:]

    parsed_args = None

    try:
        with profile('main', 'parse_args'):
            parser = create_parser()
            parsed_args = parser.parse_args(args)
        sys.exit(run_randexp(parsed_args))
    except ConfigError as exc:
        print("randexp: configuration error: {}".format(exc), file=sys.stderr)
        sys.exit(1)
    except DomainError as exc:
        print("randexp: invalid input: {}".format(exc), file=sys.stderr)
        sys.exit(1)
    except InconclusiveError as exc:
        print("randexp: inconclusive: {}".format(exc), file=sys.stderr)
        sys.exit(2)
    except AccuracyError as exc:
        print("randexp: accuracy error: {}".format(exc), file=sys.stderr)
        sys.exit(2)
    except KeyboardInterrupt:
        logger.info('Keyboard Interrupt')
        sys.exit(2)
    except BrokenPipeError:
        sys.exit(2)
    except Exception:
        traceback.print_exc()
        sys.exit(3)
    finally:
        # Profiling output goes last
        if parsed_args is not None:
            ProfileManager().finish(parsed_args)


if __name__ == '__main__':
    main()

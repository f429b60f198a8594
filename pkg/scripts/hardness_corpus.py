"""
Hardness Corpus Generation Script
Writes seeded random CNF formulas, their reductions for each rho and a
verdict summary into an output directory
"""

import argparse
import logging
import os
import sys

import numpy as np
import pandas as pd

from ncfsym.config import get_limits
from ncfsym.errors import CapacityError
from ncfsym.hardness import random_cnf, reduce, render_dimacs, verify_claims
from ncfsym.monitoring import setup_logging

logger = logging.getLogger('ncfsym.scripts.hardness_corpus')


class HardnessCorpusGenerator:
    """
    Generates reduction instances and checks the symmetry-level gap on each
    """

    def __init__(self, output_dir, seed=0, max_vars=4, max_clauses=5):
        """
        Args:
            output_dir: directory receiving the DIMACS files and summary.csv
            seed: seed of the numpy generator
            max_vars: variable bound for random formulas
            max_clauses: clause bound for random formulas
        """
        self.output_dir = output_dir
        self.rng = np.random.default_rng(seed)
        self.max_vars = max_vars
        self.max_clauses = max_clauses
        self.limits = get_limits()

    def generate(self, count, rhos):
        """
        Create ``count`` base formulas and reduce each with every rho

        Returns:
            DataFrame with one row per (formula, rho)
        """
        os.makedirs(self.output_dir, exist_ok=True)
        records = []

        for index in range(count):
            base = random_cnf(self.rng, self.max_vars, self.max_clauses)
            base_name = f"g{index:04d}.cnf"
            with open(os.path.join(self.output_dir, base_name), 'w') as f:
                f.write(render_dimacs(base))

            for rho in rhos:
                instance = reduce(base, rho)
                reduced_name = f"g{index:04d}_rho{rho}.cnf"
                with open(os.path.join(self.output_dir, reduced_name), 'w') as f:
                    f.write(render_dimacs(instance.result, comment=f"reduced from {base_name}, rho={rho}"))

                record = {
                    'base': base_name,
                    'instance': reduced_name,
                    'n': base.num_vars,
                    'clauses': base.num_clauses,
                    'rho': rho,
                    'f_vars': instance.result.num_vars,
                }
                try:
                    verdict = verify_claims(instance, self.limits)
                    record.update(sat=verdict.g_satisfiable, level=verdict.level_of_f, ok=verdict.claims_hold)
                except CapacityError as e:
                    logger.warning(f"Skipping verification of {reduced_name}: {e}")
                    record.update(sat=None, level=None, ok=None)
                records.append(record)

        df = pd.DataFrame.from_records(records)
        summary_path = os.path.join(self.output_dir, 'summary.csv')
        df.to_csv(summary_path, index=False)
        logger.info(f"Wrote {len(df)} instances to {self.output_dir}")
        return df


def main():
    """Main function for command-line usage"""

    parser = argparse.ArgumentParser(description='Generate a seeded corpus of symmetry-level gap instances')

    parser.add_argument('--output', '-o', default='hardness_corpus',
                        help='Output directory')
    parser.add_argument('--count', '-n', type=int, default=50,
                        help='Number of random base formulas')
    parser.add_argument('--rho', type=int, nargs='+', default=[1, 2],
                        help='Gap parameters to reduce with')
    parser.add_argument('--seed', '-s', type=int, default=0,
                        help='Random seed')
    parser.add_argument('--max-vars', type=int, default=4,
                        help='Maximum variables per base formula')
    parser.add_argument('--max-clauses', type=int, default=5,
                        help='Maximum clauses per base formula')
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='Log progress to stderr')

    args = parser.parse_args()
    setup_logging(logging.INFO if args.verbose else logging.WARNING)

    generator = HardnessCorpusGenerator(args.output, args.seed, args.max_vars, args.max_clauses)
    df = generator.generate(args.count, args.rho)

    verified = df.dropna(subset=['ok'])
    violations = verified[~verified['ok'].astype(bool)]
    print(f"✅ {len(df)} instances written to {args.output}")
    print(verified.groupby(['rho', 'sat'])['level'].describe()[['count', 'min', 'max']].to_string())
    if len(violations):
        print(f"❌ {len(violations)} instances violate the gap claims")
        sys.exit(1)


if __name__ == "__main__":
    main()

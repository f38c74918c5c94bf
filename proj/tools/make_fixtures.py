#!/usr/bin/env python3
"""Regenerate the FCIDUMP fixtures and their reference sidecars under data/.

Requires pyscf. The C++ code never calls this script; the generated files are
checked in so builds and tests are self-contained.
"""
import json
import pathlib

import numpy as np
from pyscf import ao2mo, cc, fci, gto, mp, scf

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def linear_chain(symbol, n, r):
    return "; ".join(f"{symbol} 0 0 {i * r:.6f}" for i in range(n))


def write_fcidump(path, h1, eri, ecore, nelec, orb_energies):
    n = h1.shape[0]
    lines = [f" &FCI NORB={n:3d},NELEC={nelec:3d},MS2=0,",
             "  ORBSYM=" + ",".join("1" for _ in range(n)) + ",",
             "  ISYM=1,", " &END"]
    fmt = "{:23.16e} {:4d} {:4d} {:4d} {:4d}"
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if kl > ij:
                        continue
                    v = eri[i, j, k, l]
                    if abs(v) > 1e-14:
                        lines.append(fmt.format(v, i + 1, j + 1, k + 1, l + 1))
    for i in range(n):
        for j in range(i + 1):
            if abs(h1[i, j]) > 1e-14:
                lines.append(fmt.format(h1[i, j], i + 1, j + 1, 0, 0))
    for i, e in enumerate(orb_energies):
        lines.append(fmt.format(e, i + 1, 0, 0, 0))
    lines.append(fmt.format(ecore, 0, 0, 0, 0))
    path.write_text("\n".join(lines) + "\n")


def build(name, atom, basis, orbitals="canonical"):
    mol = gto.M(atom=atom, basis=basis, verbose=0, unit="Angstrom")
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    e_mp2 = mf.e_tot + mp.MP2(mf).run(verbose=0).e_corr
    solver = fci.FCI(mf)
    e_fci, civec = solver.kernel()
    norb = mf.mo_coeff.shape[1]
    dm = solver.make_rdm1(civec, norb, mol.nelectron)
    fci_noons = np.sort(np.linalg.eigvalsh(dm))[::-1]

    coeff = mf.mo_coeff
    energies = mf.mo_energy
    noons = None
    if orbitals == "ccsd-natural":
        mycc = cc.CCSD(mf).run(verbose=0)
        occ, rot = np.linalg.eigh(mycc.make_rdm1())
        order = np.argsort(-occ)
        noons = occ[order]
        coeff = mf.mo_coeff @ rot[:, order]
        fock_ao = mf.get_fock()
        energies = np.einsum("pi,pq,qi->i", coeff, fock_ao, coeff)

    h1 = coeff.T @ mf.get_hcore() @ coeff
    eri = ao2mo.restore(1, ao2mo.kernel(mol, coeff), norb)
    write_fcidump(OUT / f"{name}.fcidump", h1, eri, mol.energy_nuc(),
                  mol.nelectron, energies)
    ref = {"hf": mf.e_tot, "mp2": e_mp2, "fci": e_fci, "geometry": atom,
           "basis": basis, "orbitals": orbitals,
           "fci_noons": [float(x) for x in fci_noons]}
    if noons is not None:
        ref["noons"] = [float(x) for x in noons]
    (OUT / f"{name}.ref.json").write_text(json.dumps(ref, indent=2) + "\n")
    print(f"{name:24s} norb={norb:2d} nelec={mol.nelectron:2d} "
          f"hf={mf.e_tot:.10f} fci={e_fci:.10f}")


def main():
    OUT.mkdir(exist_ok=True)
    build("h2_sto3g_0.735", linear_chain("H", 2, 0.735), "sto-3g")
    build("h4_sto3g_0.85", linear_chain("H", 4, 0.85), "sto-3g")
    build("lih_sto3g_1.45", "Li 0 0 0; H 0 0 1.45", "sto-3g")
    build("h2o_sto3g", "O 0 0 0.1173; H 0 0.7572 -0.4692; H 0 -0.7572 -0.4692",
          "sto-3g")
    for r in (0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0):
        build(f"h6_sto3g_{r:.2f}", linear_chain("H", 6, r), "sto-3g")
    for r in (0.8, 1.0, 1.2, 1.5, 2.0, 2.5, 3.0):
        build(f"lih_631g_{r:.2f}", f"Li 0 0 0; H 0 0 {r}", "6-31g",
              orbitals="ccsd-natural")


if __name__ == "__main__":
    main()

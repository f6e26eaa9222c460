#pragma once

// JSON forms of the computed artifacts. The same documents are printed by
// the command-line tool and stored in the result cache.

#include <json.hpp>

#include "hcx/complex.hpp"
#include "hcx/homology.hpp"
#include "hcx/matching.hpp"
#include "hcx/morse.hpp"
#include "hcx/witnesses.hpp"

namespace hcx {

using Json = nlohmann::ordered_json;

// "0,1,3|2,4" style list of blocks, each a list of letters.
Json blocks_json(const BarredFace& f);

// {n, faces:[{id, perm, blocks, dim}]}
Json faces_json(const FaceTable& table);
FaceTable faces_from_json(const Json& doc, const Budget& budget = {});

// {n, dual, pairs:[[a,b]], critical:[ids]}; each pair listed once, lower id
// first.
Json matching_json(const MatchingMap& map);
MatchingMap matching_from_json(const Json& doc, const FaceTable& table);

// {n, dual, m:{"-1":..}, acyclic, certificateDigest}
Json morse_json(const MorseNumbers& mn, const AcyclicityCertificate& cert);

Json certificate_json(const AcyclicityCertificate& cert);
AcyclicityCertificate certificate_from_json(const Json& doc);

// {n, coeff, betti:[..], torsion:[[dim,[factors]]]}, plus completeness and
// escalation flags.
Json betti_json(const BettiTable& table);
BettiTable betti_from_json(const Json& doc);

// {n, k, freeFace, terms:[{perm, sign}]}
Json witness_json(const WitnessSpec& spec, const SignedChain& z);

}  // namespace hcx

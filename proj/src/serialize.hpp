#pragma once
#include <string>

#include "analysis.hpp"

namespace sqpc {

/*
 * Stable text encodings.  JSON objects keep insertion order and contain no
 * timestamps or host details, so identical runs serialize to identical
 * bytes.
 */

// Omniscient session record.
std::string transcript_to_text(const Transcript& t);
Transcript transcript_from_text(const std::string& text); // validating parser

// Short human-readable digest (status, checks, per-digit comparison values).
std::string transcript_summary(const Transcript& t);

std::string party_view_to_text(const PartyView& v);

/*
 * Entangling attack description file: '#' starts a comment, tokens are
 * whitespace-separated, complex entries are "re im" pairs, matrices are
 * row-major.  Keywords: kind (optional preset name for non-entangling
 * attacks), particle_dim, probe_dim, probe_state, forward_unitary,
 * return_unitary.
 */
AttackSpec attack_spec_from_text(const std::string& text);
AttackSpec attack_spec_from_file(const std::string& path);
std::string attack_spec_to_text(const AttackSpec& spec);

std::string profile_to_json(const AttackProfile& p);
std::string verify_result_to_json(const VerifyResult& r);

std::string campaign_to_json(const CampaignReport& r);
std::string campaign_to_csv(const CampaignReport& r);

std::string audit_to_json(const VisibilityAudit& a);

} // namespace sqpc

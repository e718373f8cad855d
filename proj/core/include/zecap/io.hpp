#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "zecap/campaign.hpp"
#include "zecap/capacity.hpp"
#include "zecap/channel.hpp"

namespace zecap {

/// Insertion-ordered JSON keeps serialized reports stable byte-for-byte.
using Json = nlohmann::ordered_json;

/// On-disk channel description. Complex entries are [re, im] pairs and
/// matrices are stored as row-major nested arrays.
struct ChannelFile {
    std::string name;
    int d_in = 0;
    int d_out = 0;
    std::vector<MatrixXcd> kraus;
};

Json channel_file_to_json(const ChannelFile& file);
ChannelFile channel_file_from_json(const Json& j);

ChannelFile read_channel_file(const std::string& path);
void write_channel_file(const std::string& path, const ChannelFile& file);

/// Shape-checks the Kraus list against the declared dimensions and builds
/// the channel (trace preservation is measured, not required).
Channel to_channel(const ChannelFile& file);
ChannelFile from_channel(const Channel& ch, std::string name);

Json to_json(const PureState& s);
Json to_json(const CapacityVerdict& v);
Json to_json(const SuperactivationReport& r);
Json to_json(const AnalysisOptions& a);
Json to_json(const CampaignConfig& c);
Json to_json(const TrialRecord& t);
Json to_json(const CampaignCounts& c);
Json to_json(const CampaignReport& r);

PureState pure_state_from_json(const Json& j);
CapacityVerdict capacity_verdict_from_json(const Json& j);
SuperactivationReport superactivation_report_from_json(const Json& j);
AnalysisOptions analysis_options_from_json(const Json& j);
CampaignConfig campaign_config_from_json(const Json& j);
TrialRecord trial_record_from_json(const Json& j);
CampaignCounts campaign_counts_from_json(const Json& j);
CampaignReport campaign_report_from_json(const Json& j);

bool operator==(const ChannelFile& a, const ChannelFile& b);
bool operator==(const PureState& a, const PureState& b);
bool operator==(const CapacityVerdict& a, const CapacityVerdict& b);
bool operator==(const SuperactivationReport& a, const SuperactivationReport& b);
bool operator==(const AnalysisOptions& a, const AnalysisOptions& b);
bool operator==(const CampaignConfig& a, const CampaignConfig& b);
bool operator==(const TrialRecord& a, const TrialRecord& b);
bool operator==(const CampaignCounts& a, const CampaignCounts& b);
bool operator==(const CampaignReport& a, const CampaignReport& b);

}  // namespace zecap

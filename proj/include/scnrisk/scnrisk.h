/*
 * Copyright 2026 The scnrisk Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the scnrisk library. All handles are opaque; every call
 * returns a status and, on failure, leaves a message retrievable with
 * scn_last_error() on the calling thread. Strings returned through `char**`
 * are owned by the caller and released with scn_string_free(). */

#ifndef SCNRISK_SCNRISK_H
#define SCNRISK_SCNRISK_H

#if defined(_WIN32)
#if defined(SCNRISK_BUILDING_LIBRARY)
#define SCNRISK_API __declspec(dllexport)
#else
#define SCNRISK_API __declspec(dllimport)
#endif
#else
#define SCNRISK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum scn_status {
  SCN_OK = 0,
  SCN_ERR_PARSE = 1,
  SCN_ERR_VALIDATION = 2,
  SCN_ERR_SOLVER_CAP = 3,
  SCN_ERR_SOLVER = 4,
  SCN_ERR_SIMULATION = 5,
  SCN_ERR_IO = 6,
  SCN_ERR_INVALID_ARGUMENT = 7,
  SCN_ERR_INTERNAL = 8
} scn_status;

typedef enum scn_attitude {
  SCN_ATTITUDE_NEUTRAL = 0,
  SCN_ATTITUDE_AVERSE = 1
} scn_attitude;

typedef struct scn_scenario scn_scenario;
typedef struct scn_experiment scn_experiment;

typedef struct scn_run_options {
  double scale;               /* lead-time increase of the disrupted agent */
  unsigned long long rounds;  /* out-of-sample simulation rounds */
  unsigned long long samples; /* SAA sample count, 0 keeps the scenario's */
  unsigned long long seed;
  int has_seed;               /* 0 keeps the scenario's seed */
  unsigned long long max_binaries; /* 0 keeps the default cap */
  const char* dump_dir;       /* write one model dump per solve, or NULL */
} scn_run_options;

typedef struct scn_summary {
  int replanned;
  double initial_cost, initial_lateness, initial_objective;
  double baseline_cost, baseline_lateness, baseline_objective;
  double cost, lateness, objective;
  double baseline_mean_total_lateness, mean_total_lateness;
  double baseline_mean_customer_lateness, mean_customer_lateness;
  double baseline_mean_customer_unmet, mean_customer_unmet;
} scn_summary;

SCNRISK_API const char* scn_status_name(scn_status status);
SCNRISK_API const char* scn_last_error(void);
SCNRISK_API void scn_string_free(char* text);

SCNRISK_API void scn_run_options_init(scn_run_options* options);

SCNRISK_API scn_status scn_scenario_load(const char* path, scn_scenario** out);
SCNRISK_API scn_status scn_scenario_parse(const char* json_text, scn_scenario** out);
SCNRISK_API scn_status scn_scenario_clone(const scn_scenario* scenario, scn_scenario** out);
SCNRISK_API void scn_scenario_free(scn_scenario* scenario);
SCNRISK_API scn_status scn_scenario_serialize(const scn_scenario* scenario, char** out);
SCNRISK_API scn_status scn_scenario_initial_plan_json(const scn_scenario* scenario, char** out);
/* Number of agents and the id of agent `index` (ordered by id). */
SCNRISK_API scn_status scn_scenario_agent_count(const scn_scenario* scenario, unsigned long long* out);
SCNRISK_API scn_status scn_scenario_agent_id(const scn_scenario* scenario, unsigned long long index,
                                             char** out);
/* Sets the attitude `agent` takes when it sources products. */
SCNRISK_API scn_status scn_scenario_set_demand_attitude(scn_scenario* scenario, const char* agent,
                                                        scn_attitude attitude);
/* Same, for every agent in the network. */
SCNRISK_API scn_status scn_scenario_set_all_demand_attitudes(scn_scenario* scenario,
                                                             scn_attitude attitude);

SCNRISK_API scn_status scn_experiment_run(const scn_scenario* scenario,
                                          const scn_run_options* options, scn_experiment** out);
SCNRISK_API void scn_experiment_free(scn_experiment* experiment);
SCNRISK_API scn_status scn_experiment_summary(const scn_experiment* experiment, scn_summary* out);
SCNRISK_API scn_status scn_experiment_summary_json(const scn_experiment* experiment, char** out);
SCNRISK_API scn_status scn_experiment_plan_json(const scn_experiment* experiment, char** out);
SCNRISK_API scn_status scn_experiment_trace_json(const scn_experiment* experiment, char** out);
SCNRISK_API scn_status scn_experiment_lateness_csv(const scn_experiment* experiment, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SCNRISK_SCNRISK_H */

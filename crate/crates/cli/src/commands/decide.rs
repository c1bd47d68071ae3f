//! `decide`: equilibrium loading and the two decision rules at one
//! market configuration.

use clap::Args;

use jointprice_core::market::{
    decide_corollary, decide_theorem1, premium_difference, solve_equilibrium, MarketSpec,
    PricingDecision,
};

use super::{parse_demand_model, resolve_common, resolve_pair, PairArgs};
use crate::output::{write_output, CliError, Summary};
use crate::CommonArgs;

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct DecideArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Total market demand for line A.
    #[arg(long)]
    pub demand_a: Option<f64>,
    /// Total market demand for line B.
    #[arg(long)]
    pub demand_b: Option<f64>,
    /// Providers of line A (the joint pricer included).
    #[arg(long)]
    pub insurers_a: Option<u32>,
    /// Providers of line B.
    #[arg(long)]
    pub insurers_b: Option<u32>,
    /// Reaction factor of line-A policyholders.
    #[arg(long)]
    pub reaction_a: Option<f64>,
    /// Reaction factor of line-B policyholders.
    #[arg(long)]
    pub reaction_b: Option<f64>,
    /// Demand response: logistic or linear.
    #[arg(long)]
    pub demand_model: Option<String>,
}

fn push_decision(summary: &mut Summary, label: &str, decision: &PricingDecision) {
    summary.push(&format!("{label}_verdict"), decision.verdict);
    for (name, satisfied) in &decision.conditions_checked {
        summary.push(&format!("{label}_condition[{name}]"), satisfied);
    }
    if let Some(d) = decision.advisory_d_ptf {
        summary.push_f64(&format!("{label}_advisory_d_ptf"), d);
    }
}

pub fn run(args: DecideArgs) -> Result<(), CliError> {
    let (resolver, resolved) = resolve_common(&args.common)?;
    let (resolver, pair) = resolve_pair(resolver, &args.pair)?;
    let market = MarketSpec::new(
        resolver.require("demand_a", args.demand_a)?,
        resolver.require("demand_b", args.demand_b)?,
        resolver.require("insurers_a", args.insurers_a)?,
        resolver.require("insurers_b", args.insurers_b)?,
        resolver.require("reaction_a", args.reaction_a)?,
        resolver.require("reaction_b", args.reaction_b)?,
    )?;
    let model_name: String =
        resolver.get("demand_model", args.demand_model.clone(), "linear".to_string())?;
    let model = parse_demand_model(&model_name)?;
    let risk = resolved.risk;

    let equilibrium = solve_equilibrium(&pair, &risk, &market, model)?;
    let d_ptf = premium_difference(&pair, &risk, &market, equilibrium.psi_star);
    let standalone_total = market.demand_a() / market.insurers_a() as f64
        * pair.line_a().pi()
        * (1.0 + pair.psi_a(&risk))
        + market.demand_b() / market.insurers_b() as f64
            * pair.line_b().pi()
            * (1.0 + pair.psi_b(&risk));
    let theorem = decide_theorem1(&pair, &risk, &market)?;
    let corollary = decide_corollary(&pair, &risk, &market)?;
    let region = pair.competitiveness_region(&risk);

    let mut summary = Summary::new();
    summary.push("demand_model", &model_name);
    summary.push_f64("w_d", market.demand_share_b());
    summary.push_f64("w_ct", theorem.w_ct);
    summary.push_f64("eta", theorem.eta);
    summary.push_f64("psi_a", region.psi_a);
    summary.push_f64("psi_b", region.psi_b);
    summary.push_f64("psi_min", region.psi_min);
    summary.push_f64("psi_star", equilibrium.psi_star);
    summary.push_f64("n_star", equilibrium.n_star);
    summary.push_f64("count_a", equilibrium.count_a);
    summary.push_f64("count_b", equilibrium.count_b);
    summary.push_f64("discount_a", equilibrium.discount_a);
    summary.push_f64("discount_b", equilibrium.discount_b);
    summary.push("converged", equilibrium.converged);
    summary.push("iterations", equilibrium.iterations);
    summary.push("multiple_roots", equilibrium.multiple_roots);
    summary.push_f64("d_ptf", d_ptf);
    summary.push_f64("relative_d_ptf", d_ptf / standalone_total);
    push_decision(&mut summary, "theorem1", &theorem);
    push_decision(&mut summary, "corollary1", &corollary);

    let path = write_output(
        &resolved.out,
        &format!("decide_summary.{}", resolved.format.extension()),
        &summary.render(resolved.format),
    )?;
    println!("theorem-1 verdict: {}", theorem.verdict);
    println!("corollary-1 verdict: {}", corollary.verdict);
    println!("wrote {}", path.display());
    Ok(())
}

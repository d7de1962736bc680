#pragma once

#include <string>
#include <vector>

// One parameter choice per catalog family.
inline const std::vector<std::string>& catalog_fixtures()
{
    static const std::vector<std::string> specs = {
        "pareto:alpha=2,theta=1",
        "frechet:alpha=1.5",
        "burr:a=1,b=2",
        "hallweiss:alpha=2,tau=-1",
        "loggamma:alpha=2,beta=1.5",
        "invgamma:alpha=2,beta=1",
        "abst:v=3",
        "fdist:m=4,n=6",
        "beta2:a=2,b=3",
        "beta:a=2,b=3",
        "reverseburr:a=1,b=2",
        "gamma:alpha=2,lambda=1",
        "absnormal",
        "weibull:beta=2,c=1",
        "perturbedweibull:beta=2,alpha=1,c=1,d=0.5",
        "benktander2:beta=0.5,lambda=1",
        "logistic",
        "truncatedgumbel",
        "truncgumbelunit",
        "e1c:c=1",
    };
    return specs;
}

score = scale(raw) + shift(bias);
audit = review(score) - review(bias);

if (score > limit)
{
    if (audit > margin) audit = rebalance(audit) + trim(margin);
    if (score > audit)
    {
        gap = spread(score) - spread(audit);
        gap = refine(gap) + refine(audit);
        score = blend(score) * blend(gap);
    }
}
else
{
}
